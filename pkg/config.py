# config.py
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Application settings
APP_TITLE = "q-Heisenberg Explorer"
APP_ICON = "🧮"

# Algebra settings
DEFAULT_Q = os.getenv("QHEIS_DEFAULT_Q", "2")
SUBSTITUTE_Q = os.getenv("QHEIS_SUBSTITUTE_Q", "true").strip().lower() in ("1", "true", "yes", "on")

# Laurent window settings
MIN_TRUSTED_WIDTH = int(os.getenv("QHEIS_MIN_TRUSTED_WIDTH", "16"))
WINDOW_WIDTH = int(os.getenv("QHEIS_WINDOW_WIDTH", "64"))

# Spectral settings
SPECTRUM_SEARCH_LIMIT = int(os.getenv("QHEIS_SPECTRUM_SEARCH_LIMIT", "200"))

# Corpus verification
WORKERS = int(os.getenv("QHEIS_WORKERS", "1"))

# Logging
LOG_LEVEL = os.getenv("QHEIS_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = os.getenv("QHEIS_LOG_FORMAT", "%(asctime)s - %(name)s - %(levelname)s - %(message)s")

# Custom CSS for styling the app
CSS = """
<style>
    :root {
        --primary-bg: #0D1117;
        --secondary-bg: #161B22;
        --teal-accent: #2DD4BF;
        --teal-dark: #0F766E;
        --teal-light: #5EEAD4;
        --text-primary: #E6E6E6;
        --code-bg: #1E293B;
    }

    .stApp {
        background-color: var(--primary-bg);
        color: var(--text-primary);
    }

    h1, h2, h3, h4, h5, h6 {
        color: var(--teal-light) !important;
    }

    .stButton > button {
        background-color: var(--teal-dark) !important;
        color: white !important;
        border: none !important;
        border-radius: 0.5rem !important;
        width: 100%;
    }

    /* Normal form / curve cards */
    .element-card {
        background-color: var(--secondary-bg);
        border-radius: 0.5rem;
        padding: 1rem;
        margin-bottom: 1rem;
        border-left: 4px solid var(--teal-accent);
    }

    .check-pass { color: var(--teal-accent); font-weight: bold; }
    .check-fail { color: #EF4444; font-weight: bold; }

    .code-block {
        background-color: var(--code-bg);
        color: var(--teal-light);
        padding: 1rem;
        border-radius: 0.5rem;
        font-family: monospace;
        overflow-x: auto;
    }
</style>
"""

EXAMPLE_PAIRS = [
    ("A", "A^2"),
    ("B*A", "(B*A)^2"),
    ("A + 1", "A^2 + 3*A + 2"),
    ("A", "B*A"),
]
