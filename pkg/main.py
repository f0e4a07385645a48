import sys
import os

# Add the current directory to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

# Now import and run the CLI
from zenodae.app.main import main

if __name__ == "__main__":
    main()
