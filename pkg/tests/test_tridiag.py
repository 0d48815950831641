import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from jjrep import tridiag
from jjrep.tridiag import ConvergenceError

BACKENDS = tridiag.available_backends()

finite = st.floats(-50, 50, allow_nan=False)
tri_st = st.integers(1, 25).flatmap(
    lambda n: st.tuples(st.lists(finite, min_size=n, max_size=n), st.lists(finite, min_size=n - 1, max_size=n - 1))
)


def _dense(d, e):
    n = len(d)
    M = np.diag(np.asarray(d, float))
    if n > 1:
        M += np.diag(e, 1) + np.diag(e, -1)
    return M


def test_python_backend_always_present():
    assert "python" in BACKENDS
    assert tridiag.BACKEND in BACKENDS


def test_unknown_backend():
    with pytest.raises(ValueError):
        tridiag.use_backend("fortran")


@pytest.mark.parametrize("backend", BACKENDS)
def test_closed_form_3x3(backend):
    ev = tridiag.eigvals([4.0, 0.0, 4.0], [-1.0, -1.0], backend=backend)
    want = [2 - np.sqrt(6), 4.0, 2 + np.sqrt(6)]
    assert np.max(np.abs(ev - want)) <= 1e-14


@pytest.mark.parametrize("backend", BACKENDS)
def test_diagonal_only(backend):
    ev = tridiag.eigvals([3.0, -1.0, 2.0, 2.0], [0.0, 0.0, 0.0], backend=backend)
    assert list(ev) == [-1.0, 2.0, 2.0, 3.0]


@pytest.mark.parametrize("backend", BACKENDS)
@given(data=tri_st)
def test_matches_jacobi_oracle(backend, data):
    d, e = data
    ev = tridiag.eigvals(d, e, backend=backend)
    ref = oracles.jacobi_eigvalsh(_dense(d, e))
    scale = max(1.0, np.max(np.abs(ref)))
    assert np.all(np.diff(ev) >= 0)
    assert np.max(np.abs(ev - ref)) <= 1e-11 * scale


@pytest.mark.parametrize("backend", BACKENDS)
@given(data=tri_st)
def test_sturm_count_brackets_eigenvalues(backend, data):
    d, e = data
    ev = tridiag.eigvals(d, e, backend=backend)
    for j, v in enumerate(ev):
        # polished values are the lower end of a one-ulp Sturm bracket
        assert tridiag.sturm_count(d, e, v, backend) <= j
        assert tridiag.sturm_count(d, e, np.nextafter(v, np.inf), backend) >= j + 1


def test_backends_agree():
    rng = np.random.default_rng(11)
    d, e = rng.normal(size=40), rng.normal(size=39)
    results = [tridiag.eigvals(d, e, backend=b) for b in BACKENDS]
    for r in results[1:]:
        assert np.array_equal(r, results[0])


@pytest.mark.parametrize("backend", BACKENDS)
def test_non_convergence_raises(backend):
    with pytest.raises(ConvergenceError):
        tridiag.tridiag_eigvals([1.0, 2.0, 3.0], [1.0, 1.0], max_iter=0, backend=backend)


@pytest.mark.parametrize("backend", BACKENDS)
def test_shape_errors(backend):
    with pytest.raises(ValueError):
        tridiag.tridiag_eigvals([1.0, 2.0], [1.0, 1.0], backend=backend)


def test_empty_matrix():
    assert len(tridiag.eigvals([], [])) == 0


def test_fallback_selected_without_extension():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['jjrep._tridiag'] = None\n"
        "from jjrep import tridiag, fibers, params\n"
        "print(tridiag.BACKEND, tridiag.available_backends())\n"
        "print(*fibers.fiber_eigs(fibers.fiber_matrix(1, params.ModelParams())))\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True).stdout.splitlines()
    assert out[0] == "python ['python']"
    assert np.max(np.abs(np.array(out[1].split(), dtype=float) - [-0.5, 1.5])) <= 1e-15
