import os

from dotenv import load_dotenv

load_dotenv()


class Config:
    LOG_LEVEL = os.environ.get('APMM_LOG_LEVEL', 'INFO')
    SHOW_PROGRESS = os.environ.get('APMM_SHOW_PROGRESS', '0') == '1'
    N_JOBS = int(os.environ.get('APMM_N_JOBS', '1'))
    OUTPUT_DIR = os.environ.get('APMM_OUTPUT_DIR', 'results')

    # dt = factor * dx**2
    REF_DT_FACTOR = 0.05
    MACRO_DT_FACTOR = 0.2

    EMM_NX = 64
    EMM_NY = 16
    REF_NX = 1024
    # REF needs this many cells per oscillation period
    REF_CELLS_PER_PERIOD = 20
    REF_MIN_CELLS_PER_PERIOD = 16

    FIGURE1_EPSILONS = (1.0, 0.1, 0.01)
    FIGURE1_T_END = 0.02
    LONG_T_END = 1.0

    AP_STUDY_EPSILONS = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
    AP_STUDY_STEPS = 100

    # check for NaN/Inf every so many explicit steps
    FINITE_CHECK_EVERY = 1000
    ZERO_MEAN_TOLERANCE = 1e-11
    # width in x of the least-squares fit behind the EMM corrector boundary data
    BOUNDARY_FIT_WIDTH = 0.25

    CSV_FLOAT_FORMAT = '%.17g'
