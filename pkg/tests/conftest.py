import sys
from pathlib import Path

# make reference_data importable when pytest is run from anywhere
sys.path.insert(0, str(Path(__file__).parent))
