"""Schur complement completion, closed-form spectra and J-frames."""

import json

import numpy as np

from ._schurcomp import (
    Certificate,
    SchurcompError,
    alpha,
    construct,
    jordan_rank_probe,
    numeric_spectrum,
    root_locus_csv,
)
from . import _schurcomp as _core

__all__ = [
    "Certificate",
    "SchurcompError",
    "alpha",
    "check_feasible",
    "check_identities",
    "construct",
    "frame_bounds",
    "infeasibility_witness",
    "is_jframe_matrix",
    "jordan_rank_probe",
    "numeric_spectrum",
    "predict_spectrum",
    "root_locus",
    "root_locus_csv",
    "synthesize_jframe",
]


def _c(m):
    return np.asarray(m, dtype=np.complex128)


def _complex(pair):
    return complex(pair[0], pair[1])


def check_feasible(A, D, kappa=1.0, mode="definite", zero_tol=-1.0):
    return json.loads(_core._check_feasible(_c(A), _c(D), kappa, mode, zero_tol))


def infeasibility_witness(A, D, K, mode="definite", zero_tol=-1.0):
    out = _core._infeasibility_witness(_c(A), _c(D), _c(K), mode, zero_tol)
    if out is None:
        return None
    w = json.loads(out)
    w["vector"] = np.array([_complex(z) for z in w["vector"]])
    return w


def predict_spectrum(cert):
    p = json.loads(cert._predict_spectrum())
    for e in p["eigenvalues"]:
        e["value"] = _complex(e["value"])
    return p


def frame_bounds(cert):
    return json.loads(cert._frame_bounds())


def synthesize_jframe(cert):
    """Returns (vectors, signatures) with one frame vector per column."""
    f = json.loads(cert._synthesize_jframe())
    vectors = np.array([[_complex(z) for z in m["vector"]] for m in f["members"]]).T
    signatures = np.array([m["signature"] for m in f["members"]])
    return vectors, signatures


def root_locus(lam, mu, grid, kappa=1.0, mode="definite"):
    return json.loads(_core._root_locus(lam, mu, list(grid), kappa, mode))


def is_jframe_matrix(S, n, m):
    return json.loads(_core._is_jframe_matrix(_c(S), n, m))


def check_identities(A, B, C, D, K):
    return json.loads(_core._check_identities(_c(A), _c(B), _c(C), _c(D), _c(K)))
