import sys

from stirkit.cli.main import main

sys.exit(main())
