import os
import subprocess
import sys

import pytest

from schubsep import _kernels_py, kernels
from schubsep.eg import ck_classes, shape_of
from schubsep.perm import all_perms

try:
    from schubsep import _kernels
except ImportError:  # extension not built
    _kernels = None


def brute(p, shape):
    return sum(1 for t in ck_classes(p) if shape_of(t) == tuple(shape))


SHAPES = [(), (1,), (2,), (1, 1), (2, 1), (3,), (1, 1, 1), (2, 2), (3, 1), (2, 1, 1), (3, 2), (2, 2, 1), (3, 1, 1)]


def test_python_kernel_matches_classes():
    for p in all_perms(4) + all_perms(5)[::7]:
        for shape in SHAPES:
            assert _kernels_py.count_word_tableaux(p.values, p.start, shape) == brute(p, shape)


def test_window_offset():
    # same permutation on a shifted window
    vals = (1, 0, 2, 4, 3, 5)
    assert _kernels_py.count_word_tableaux(vals, 0, (2,)) == 1
    assert _kernels_py.count_word_tableaux(vals, 0, (1, 1)) == 1
    assert _kernels_py.count_word_tableaux(vals, 0, (1,)) == 0


@pytest.mark.skipif(_kernels is None, reason="compiled kernel not built")
def test_backends_agree(rng):
    for n in (5, 6, 7):
        pool = all_perms(n)
        for _ in range(40):
            p = rng.choice(pool)
            for shape in SHAPES:
                a = _kernels_py.count_word_tableaux(p.values, p.start, shape)
                b = _kernels.count_word_tableaux(p.values, p.start, shape)
                assert a == b


def test_backend_selection():
    compiled = _kernels is not None and not os.environ.get("SCHUBSEP_PURE")
    assert kernels.BACKEND == ("cython" if compiled else "python")
    env = dict(os.environ, SCHUBSEP_PURE="1")
    res = subprocess.run(
        [sys.executable, "-c", "from schubsep import kernels; print(kernels.BACKEND)"],
        capture_output=True, text=True, env=env,
    )
    assert res.stdout.strip() == "python"
