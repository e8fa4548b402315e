OUTPUT_DIR_ENV = "FRACWAVES_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "output"
LOG_FILE = "fracwaves.log"

# numeric policy
PURELY_IMAGINARY_TOL = 1e-12
CROSSING_TOL = 1e-10
BISECTION_WIDTH = 1e-6
SECANT_MAX_ITER = 20
KDV_BRACKET = (0.05, 0.95)

# mittag-leffler
ML_SERIES_RADIUS = 5.0
ML_SERIES_TOL = 1e-16
ML_MAX_TERMS = 400
ML_SERIES_ACCEPT = 1e-11
ML_TARGET_TOL = 1e-10
ML_QUAD_LIMIT = 200

# Lanczos g=7, n=9
LANCZOS_G = 7
LANCZOS_COEFFICIENTS = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
]

# spectral grid defaults for packet experiments
GRID_POINTS = 4096
GRID_LENGTH = 512.0
ENVELOPE_EDGE_TOL = 1e-12
# share of |u|^2 that must lie within L/4 of the centroid
ENVELOPE_ENERGY_FRACTION = 1.0 - 1e-6

SWEEP_COLUMNS = ["k", "re_omega", "im_omega", "re_vp", "im_vp", "re_vg", "im_vg", "branch_flag"]
SNAPSHOT_COLUMNS = ["x", "re_u", "im_u"]
CROSSING_COLUMNS = ["alpha", "status", "k_star", "residual", "k_predicted"]

SVG_WIDTH = 800
SVG_HEIGHT = 600
SVG_TICKS = 5
SVG_SERIES = [
    {"column": "re_vp", "label": "Re v_p", "colour": "#1f77b4", "dashed": False},
    {"column": "im_vp", "label": "Im v_p", "colour": "#1f77b4", "dashed": True},
    {"column": "re_vg", "label": "Re v_g", "colour": "#d62728", "dashed": False},
    {"column": "im_vg", "label": "Im v_g", "colour": "#d62728", "dashed": True},
]

FIGURES = [
    {
        "name": "figure_1_kinematic_alpha_0.75",
        "model": "kinematic",
        "alpha": 0.75,
        "k_min": 0.01,
        "k_max": 2.0,
        "n_samples": 200,
    },
    {
        "name": "figure_2_kinematic_alpha_0.5",
        "model": "kinematic",
        "alpha": 0.5,
        "k_min": 0.01,
        "k_max": 2.0,
        "n_samples": 200,
    },
    {
        "name": "figure_3_kdv_classical",
        "model": "kdv",
        "alpha": 1.0,
        "k_min": 0.0,
        "k_max": 2.0,
        "n_samples": 200,
    },
    {
        "name": "figure_4_kdv_alpha_0.5",
        "model": "kdv",
        "alpha": 0.5,
        "k_min": 0.05,
        "k_max": 0.95,
        "n_samples": 200,
    },
    {
        "name": "figure_5_kdv_alpha_0.75",
        "model": "kdv",
        "alpha": 0.75,
        "k_min": 0.05,
        "k_max": 0.95,
        "n_samples": 200,
    },
]
