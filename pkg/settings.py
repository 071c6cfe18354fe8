# settings.py
import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

HF_CAP = int(os.getenv("KAEHLER_HF_CAP", "256"))
DEFAULT_FIELD = os.getenv("KAEHLER_DEFAULT_FIELD", "Q")

FIXTURES_DIR = Path(os.getenv("KAEHLER_FIXTURES_DIR", "fixtures"))
REPORT_DIR = Path(os.getenv("KAEHLER_REPORT_DIR", "reports"))

SWEEP_SEED = int(os.getenv("KAEHLER_SWEEP_SEED", "20240101"))
SWEEP_SAMPLES = int(os.getenv("KAEHLER_SWEEP_SAMPLES", "6"))

# exponents and degrees above this are rejected when parsing polynomials
MAX_EXPONENT = 64
