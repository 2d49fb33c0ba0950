"""Built-in fixture maps covering every classification and theorem branch.

Each entry carries a manifest (same JSON schema accepted from users), the
expected verdicts and constants, and a short note on what the fixture
exercises. Charts use unit-speed parametrizations where possible so the
explicit metric is the identity; the round-sphere entry covers the induced
nontrivial-metric path. Periodic axes carry their exact periods so the
bienergy quadrature integrates over the whole manifold.
"""

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    manifest: dict
    expected: dict = field(default_factory=dict)
    note: str = ""


def _chart_1d(period, metric="1"):
    return {
        "params": ["t"],
        "domain": [[0, period]],
        "periodic": [True],
        "metric": {"mode": "explicit", "g": [[metric]]},
    }


def _chart_2d(period_u, period_v):
    return {
        "params": ["u", "v"],
        "domain": [[0, period_u], [0, period_v]],
        "periodic": [True, True],
        "metric": {"mode": "explicit", "g": [["1", "0"], ["1"]]},
    }


_ENTRIES = [
    CatalogEntry(
        name="great_circle_S2",
        manifest={
            "name": "great_circle_S2",
            "chart": _chart_1d("2*pi"),
            "map": {"target": "sphere", "radius": 1.0,
                    "components": ["cos(t)", "sin(t)", "0"]},
        },
        expected={
            "constants": {"lambda_hat": 1.0, "mu_hat": 1.0, "rho_hat": 1.0,
                          "c_hat": 1.0},
            "verdicts": {"is_isometric": True, "is_constant_density": True,
                         "is_harmonic": True, "is_biharmonic": True,
                         "is_eigenmap": True, "is_bieigenmap": True,
                         "is_buckling": True, "is_proper_bieigenmap": False},
            "theorems": {"takahashi": "PASS", "t1": "PASS",
                         "t2": "NOT_APPLICABLE", "t3": "PASS", "t4": "PASS"},
            "eta_max_norm": 0.0,
            "bienergy": {"grid": 128, "value": 0.0},
        },
        note="Equatorial unit-speed circle: minimal, every branch trivial.",
    ),
    CatalogEntry(
        name="small_circle_S2",
        manifest={
            "name": "small_circle_S2",
            "chart": _chart_1d("2*pi/sqrt(2)"),
            "map": {"target": "sphere", "radius": 1.0,
                    "components": ["cos(sqrt(2)*t)/sqrt(2)",
                                   "sin(sqrt(2)*t)/sqrt(2)",
                                   "1/sqrt(2)"]},
        },
        expected={
            "constants": {"rho_hat": 2.0, "c_hat": 1.0},
            "verdicts": {"is_isometric": True, "is_constant_density": True,
                         "is_harmonic": False, "is_biharmonic": True,
                         "is_eigenmap": False, "is_bieigenmap": False,
                         "is_buckling": True, "is_proper_bieigenmap": False},
            "theorems": {"takahashi": "NOT_APPLICABLE", "t1": "NOT_APPLICABLE",
                         "t2": "PASS", "t3": "NOT_APPLICABLE", "t4": "PASS"},
            "eta_max_norm": 1.0,
            "bienergy": {"grid": 256, "value": 0.5 * math.pi * math.sqrt(2.0)},
        },
        note="Unit-speed small circle at height 1/sqrt(2): the classic proper "
             "biharmonic curve, a buckling eigenmap that is not an eigenmap.",
    ),
    CatalogEntry(
        name="clifford_torus_S3",
        manifest={
            "name": "clifford_torus_S3",
            "chart": _chart_2d("2*pi/sqrt(2)", "2*pi/sqrt(2)"),
            "map": {"target": "sphere", "radius": 1.0,
                    "components": ["cos(sqrt(2)*u)/sqrt(2)",
                                   "sin(sqrt(2)*u)/sqrt(2)",
                                   "cos(sqrt(2)*v)/sqrt(2)",
                                   "sin(sqrt(2)*v)/sqrt(2)"]},
        },
        expected={
            "constants": {"lambda_hat": 2.0, "mu_hat": 4.0, "rho_hat": 2.0,
                          "c_hat": 2.0},
            "verdicts": {"is_isometric": True, "is_constant_density": True,
                         "is_harmonic": True, "is_biharmonic": True,
                         "is_eigenmap": True, "is_bieigenmap": True,
                         "is_buckling": True, "is_proper_bieigenmap": False},
            "theorems": {"takahashi": "PASS", "t1": "PASS",
                         "t2": "NOT_APPLICABLE", "t3": "PASS", "t4": "PASS"},
            "eta_max_norm": 0.0,
            "bienergy": {"grid": 32, "value": 0.0},
        },
        note="Flat minimal torus in the 3-sphere, unit-speed coordinates.",
    ),
    CatalogEntry(
        name="clifford_comp_S4",
        manifest={
            "name": "clifford_comp_S4",
            "chart": _chart_2d("pi", "pi"),
            "map": {"target": "sphere", "radius": 1.0,
                    "components": ["cos(2*u)/2", "sin(2*u)/2",
                                   "cos(2*v)/2", "sin(2*v)/2",
                                   "1/sqrt(2)"]},
        },
        expected={
            "constants": {"rho_hat": 4.0, "c_hat": 2.0},
            "verdicts": {"is_isometric": True, "is_constant_density": True,
                         "is_harmonic": False, "is_biharmonic": True,
                         "is_eigenmap": False, "is_bieigenmap": False,
                         "is_buckling": True, "is_proper_bieigenmap": False},
            "theorems": {"takahashi": "NOT_APPLICABLE", "t1": "NOT_APPLICABLE",
                         "t2": "PASS", "t3": "NOT_APPLICABLE", "t4": "PASS"},
            "eta_max_norm": 1.0,
            "bienergy": {"grid": 32, "value": 2.0 * math.pi ** 2},
        },
        note="Minimal torus in a radius-1/sqrt(2) 3-sphere lifted one "
             "dimension up: the surface case of the proper biharmonic "
             "buckling construction.",
    ),
    CatalogEntry(
        name="kfold_equator_S2",
        manifest={
            "name": "kfold_equator_S2",
            "chart": _chart_1d("2*pi"),
            "map": {"target": "sphere", "radius": 1.0,
                    "components": ["cos(3*t)", "sin(3*t)", "0"]},
        },
        expected={
            "constants": {"lambda_hat": 9.0, "mu_hat": 81.0, "rho_hat": 9.0,
                          "c_hat": 9.0},
            "verdicts": {"is_isometric": False, "is_constant_density": True,
                         "is_harmonic": True, "is_biharmonic": True,
                         "is_eigenmap": True, "is_bieigenmap": True,
                         "is_buckling": True, "is_proper_bieigenmap": False},
            "theorems": {"takahashi": "NOT_APPLICABLE", "t1": "NOT_APPLICABLE",
                         "t2": "NOT_APPLICABLE", "t3": "PASS", "t4": "PASS"},
            "eta_max_norm": None,
            "bienergy": {"grid": 128, "value": 0.0},
        },
        note="Three-fold cover of the equator: harmonic non-isometric "
             "eigenmap with constant density 9.",
    ),
    CatalogEntry(
        name="nonisometric_buckling_S2",
        manifest={
            "name": "nonisometric_buckling_S2",
            "chart": _chart_1d("2*pi/3"),
            "map": {"target": "sphere", "radius": 1.0,
                    "components": ["cos(3*t)/sqrt(2)", "sin(3*t)/sqrt(2)",
                                   "1/sqrt(2)"]},
        },
        expected={
            "constants": {"rho_hat": 9.0, "c_hat": 4.5},
            "verdicts": {"is_isometric": False, "is_constant_density": True,
                         "is_harmonic": False, "is_biharmonic": True,
                         "is_eigenmap": False, "is_bieigenmap": False,
                         "is_buckling": True, "is_proper_bieigenmap": False},
            "theorems": {"takahashi": "NOT_APPLICABLE", "t1": "NOT_APPLICABLE",
                         "t2": "NOT_APPLICABLE", "t3": "NOT_APPLICABLE",
                         "t4": "PASS"},
            "eta_max_norm": None,
            "bienergy": {"grid": 128, "value": 6.75 * math.pi},
        },
        note="Speed-3 run around the small circle: constant density 9/2, "
             "buckling constant 9 = 2c, biharmonic but neither isometric nor "
             "harmonic.",
    ),
    CatalogEntry(
        name="round_sphere_chart_S2_in_R3",
        manifest={
            "name": "round_sphere_chart_S2_in_R3",
            "chart": {
                # the polar caps are excluded: the coordinate system
                # degenerates there and fourth derivatives lose accuracy
                "params": ["theta", "phi"],
                "domain": [["0.3", "pi - 0.3"], [0, "2*pi"]],
                "periodic": [False, True],
                "metric": {"mode": "induced",
                           "immersion": ["sin(theta)*cos(phi)",
                                         "sin(theta)*sin(phi)",
                                         "cos(theta)"]},
            },
            "map": {"target": "sphere", "radius": 1.0,
                    "components": ["sin(theta)*cos(phi)",
                                   "sin(theta)*sin(phi)",
                                   "cos(theta)"]},
        },
        expected={
            "constants": {"lambda_hat": 2.0, "mu_hat": 4.0, "rho_hat": 2.0,
                          "c_hat": 2.0},
            "verdicts": {"is_isometric": True, "is_constant_density": True,
                         "is_harmonic": True, "is_biharmonic": True,
                         "is_eigenmap": True, "is_bieigenmap": True,
                         "is_buckling": True, "is_proper_bieigenmap": False},
            "theorems": {"takahashi": "PASS", "t1": "PASS",
                         "t2": "NOT_APPLICABLE", "t3": "PASS", "t4": "PASS"},
            "eta_max_norm": 0.0,
            "bienergy": {"grid": 16, "value": 0.0},
        },
        note="Spherical-coordinate chart with the metric induced from the "
             "inclusion; exercises the nontrivial-metric code path.",
    ),
    CatalogEntry(
        name="constant_map",
        manifest={
            "name": "constant_map",
            "chart": _chart_1d("2*pi"),
            "map": {"target": "sphere", "radius": 1.0,
                    "components": ["0", "0", "1"]},
        },
        expected={
            "constants": {"lambda_hat": 0.0, "mu_hat": 0.0, "rho_hat": None,
                          "c_hat": 0.0},
            "verdicts": {"is_isometric": False, "is_constant_density": True,
                         "is_harmonic": True, "is_biharmonic": True,
                         "is_eigenmap": True, "is_bieigenmap": True,
                         "is_buckling": None, "is_proper_bieigenmap": False},
            "theorems": {"takahashi": "NOT_APPLICABLE", "t1": "NOT_APPLICABLE",
                         "t2": "NOT_APPLICABLE", "t3": "PASS",
                         "t4": "NOT_APPLICABLE"},
            "eta_max_norm": None,
            "bienergy": {"grid": 64, "value": 0.0},
        },
        note="Constant point: every quantity vanishes, the buckling constant "
             "is undefined.",
    ),
    CatalogEntry(
        name="circle_S1_sqrt_half",
        manifest={
            "name": "circle_S1_sqrt_half",
            "chart": _chart_1d("2*pi/sqrt(2)"),
            "map": {"target": "sphere", "radius": 1.0 / math.sqrt(2.0),
                    "components": ["cos(sqrt(2)*t)/sqrt(2)",
                                   "sin(sqrt(2)*t)/sqrt(2)"]},
        },
        expected={
            "constants": {"lambda_hat": 2.0, "mu_hat": 4.0, "rho_hat": 2.0,
                          "c_hat": 1.0},
            "verdicts": {"is_isometric": True, "is_constant_density": True,
                         "is_harmonic": True, "is_biharmonic": True,
                         "is_eigenmap": True, "is_bieigenmap": True,
                         "is_buckling": True, "is_proper_bieigenmap": False},
            "theorems": {"takahashi": "PASS", "t1": "NOT_APPLICABLE",
                         "t2": "NOT_APPLICABLE", "t3": "NOT_APPLICABLE",
                         "t4": "NOT_APPLICABLE"},
            "eta_max_norm": None,
            "bienergy": {"grid": 128, "value": 0.0},
        },
        note="Unit-speed circle filling a radius-1/sqrt(2) 1-sphere: minimal "
             "in its own sphere, eigenvalue 2 = m / r^2.",
    ),
]


def catalog_list():
    """Deterministic ordered list of all fixture entries."""
    return list(_ENTRIES)


def catalog_names():
    return [e.name for e in _ENTRIES]


def catalog_get(name: str) -> CatalogEntry:
    for e in _ENTRIES:
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry named '{name}'")
