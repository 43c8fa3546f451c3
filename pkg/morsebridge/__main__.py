import sys

from morsebridge.main import main

sys.exit(main())
