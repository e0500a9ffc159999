"""Configuration for smod"""
import os
from pathlib import Path

# Logging
LOG_LEVEL = os.environ.get('SMOD_LOG_LEVEL', 'INFO')
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Corpus of committed inputs (manifest.json lives here)
CORPUS_DIR = Path(os.environ.get(
    'SMOD_CORPUS_DIR',
    str(Path(__file__).parent.parent.parent / 'corpus')
))

# Sampling of substitution points
DEFAULT_BOUND = int(os.environ.get('SMOD_DEFAULT_BOUND', '7'))
DEFAULT_TRIALS = int(os.environ.get('SMOD_DEFAULT_TRIALS', '10'))
MAX_SAMPLE_DRAWS = int(os.environ.get('SMOD_MAX_SAMPLE_DRAWS', '1000'))

# Trial execution (1 = sequential)
WORKERS = int(os.environ.get('SMOD_WORKERS', '1'))

# Wall-clock ms per trial; reports carry 0 unless enabled
REPORT_TIMING = os.environ.get('SMOD_REPORT_TIMING', '0') == '1'
