import pytest

from schubsep.bpd import (
    BLANK,
    ELBOW_NW,
    ELBOW_SE,
    BPD,
    BumpError,
    DoubleCrossing,
    E,
    EdgeMismatch,
    InvalidBPD,
    N,
    PipeCountError,
    S,
    W,
    bpd_polynomial,
    droops,
    enumerate_bpds,
    parse_ascii,
    render_ascii,
    render_svg,
    rothe_bpd,
    tiles_from_paths,
    validate,
    weight,
)
from schubsep.perm import all_perms, identity, length
from schubsep.poly import SparsePolynomial, var

from conftest import P


def grid(text, start=1):
    return parse_ascii(text, start)[0]


# ---------------------------------------------------------------------------
# reference droops: reroute one pipe, rebuild the grid, validate everything


def _walk(cells, came, last_out):
    steps = []
    for idx, (r, c) in enumerate(cells):
        if idx + 1 < len(cells):
            out = N if cells[idx + 1][0] == r - 1 else E
        else:
            out = last_out
        steps.append((r, c, came, out))
        came = S if out == N else W
    return steps


def reference_droops(d):
    p = d.perm()
    before = set(d.blanks())
    paths = d.pipe_paths()
    out = set()
    for label, path in paths.items():
        for idx, (i, j, came, out_edge) in enumerate(path):
            if (came, out_edge) != (S, E):
                continue
            lo = idx
            while lo > 0 and path[lo - 1][3] == N:
                lo -= 1
            hi = idx
            while hi + 1 < len(path) and path[hi + 1][2] == W:
                hi += 1
                if path[hi][3] != E:
                    break
            for s in range(lo, idx):
                ip = path[s][0]
                for t in range(idx + 1, hi + 1):
                    jp = path[t][1]
                    if d[ip, jp] != BLANK:
                        continue
                    cells = [(ip, c) for c in range(j, jp + 1)] + [(r, jp) for r in range(ip - 1, i - 1, -1)]
                    new_path = path[:s] + _walk(cells, path[s][2], path[t][3]) + path[t + 1 :]
                    others = [q for lbl, q in paths.items() if lbl != label]
                    try:
                        cand = tiles_from_paths(d.start, d.size, others + [new_path])
                        q = validate(cand)
                    except InvalidBPD:
                        continue
                    after = set(cand.blanks())
                    if q == p and before - after == {(ip, jp)} and after - before == {(i, j)}:
                        out.add(cand)
    return out


# ---------------------------------------------------------------------------


def test_validate_rothe():
    assert validate(rothe_bpd(P("132"))) == P("132")
    assert validate(rothe_bpd(identity(1, 4))) == identity(1, 4)
    for p in all_perms(4):
        d = rothe_bpd(p)
        assert validate(d) == p
        assert ELBOW_NW not in d.tiles


def test_validate_errors():
    # pipes 1 and 2 cross at (3,2) and again at (2,3)
    with pytest.raises(DoubleCrossing):
        validate(grid("..r-\n.r+-\nr+jr\n||r+"))
    with pytest.raises(EdgeMismatch):
        validate(grid("r-\nr|"))
    with pytest.raises(PipeCountError):
        validate(grid("..\n.."))
    with pytest.raises(InvalidBPD):
        validate([[ELBOW_SE, 3], [5, 6]])


def test_bump_unrepresentable():
    # an r and a j on the same cell
    paths = [[(1, 1, S, E)], [(1, 1, W, N)]]
    with pytest.raises(BumpError):
        tiles_from_paths(1, 1, paths)


def test_rothe_blanks():
    assert rothe_bpd(P("132")).blanks() == [(2, 2)]
    assert rothe_bpd(identity(1, 3)).blanks() == []
    assert rothe_bpd(P("321")).blanks() == [(1, 1), (1, 2), (2, 1)]


def test_droops():
    out = droops(rothe_bpd(P("132")))
    assert len(out) == 1 and out[0].blanks() == [(1, 1)]
    assert droops(rothe_bpd(identity(1, 4))) == []


def test_droops_match_reference():
    for p in all_perms(4) + [P("24153"), P("35142"), P("41532"), P("25314")]:
        for d in enumerate_bpds(p):
            fast = set(droops(d))
            assert fast == reference_droops(d), render_ascii(d)
            for g in fast:
                assert len(g.blanks()) == len(d.blanks())
                assert validate(BPD(g.start, g.size, g.tiles)) == p


def test_enumerate():
    assert len(enumerate_bpds(P("132"))) == 2
    assert len(enumerate_bpds(identity(1, 3))) == 1
    assert len(enumerate_bpds(P("321"))) == 1
    for p in all_perms(4):
        assert all(len(d.blanks()) == length(p) for d in enumerate_bpds(p))


def test_weight_and_polynomial():
    assert bpd_polynomial(P("132")) == var(1) + var(2)
    assert bpd_polynomial(identity(1, 3)) == SparsePolynomial.constant(1)
    assert bpd_polynomial(P("321")) == var(1) * var(1) * var(2)
    assert weight(rothe_bpd(P("132"))) == var(2)


def test_embed():
    d = rothe_bpd(P("2143"))
    big = d.embed(-1, 6)
    assert big.perm() == P("2143").embed(-1, 6)
    assert sorted(big.blanks()) == sorted(d.blanks())
    with pytest.raises(ValueError):
        big.embed(0, 6)


def test_ascii_round_trip():
    for d in enumerate_bpds(P("2413")):
        g, marks = parse_ascii(render_ascii(d))
        assert g == d and not marks
    g, marks = parse_ascii("x.r\nrj|\n|r+")
    assert marks == {(1, 1)} and g[1, 1] == BLANK


def test_svg():
    svg = render_svg(rothe_bpd(P("132")), marks=[(2, 2)])
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert "#999" in svg
