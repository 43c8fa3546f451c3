"""Published JSON schemas stay in step with the pydantic models."""

import json

import pytest

from morsebridge.schemas import (
    ClaimReport,
    CorrespondenceReport,
    MorseGraphOut,
    ParameterFile,
    PathResult,
    SignatureOut,
    TransitionGraphOut,
    ValidationReport,
)

from .conftest import ROOT

SCHEMAS = {
    "parameter-file.v1.json": ParameterFile,
    "validation-report.v1.json": ValidationReport,
    "signature.v1.json": SignatureOut,
    "transition-graph.v1.json": TransitionGraphOut,
    "morse-graph.v1.json": MorseGraphOut,
    "path-result.v1.json": PathResult,
    "correspondence-report.v1.json": CorrespondenceReport,
    "claim-report.v1.json": ClaimReport,
}


@pytest.mark.parametrize("filename, model", sorted(SCHEMAS.items()))
def test_schema_properties_match_model_fields(filename, model):
    schema = json.loads((ROOT / "docs" / "schemas" / filename).read_text(encoding="utf-8"))
    assert set(schema["properties"]) == set(model.model_fields)
