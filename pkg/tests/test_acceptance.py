"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""
import collections
import contextlib
import io
import itertools
import os
import random
import re
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from schubsep.bpd import bpd_polynomial, enumerate_bpds
from schubsep.cli import main as cli_main
from schubsep.eg import (
    ck_classes,
    ck_neighbors,
    descent_set,
    eg_insert,
    reading_word,
    shape_of,
    standard_tableaux,
    word_descents,
)
from schubsep.jdt import grassmannian_perm, jdt_rectify, lr_coefficient
from schubsep.perm import (
    all_perms,
    descents,
    has_separated_descents,
    is_reduced,
    length,
    mul_simple,
    parse_perm,
    reduced_words,
    word_product,
)
from schubsep.poly import (
    SparsePolynomial,
    divided_difference,
    multi_structure_constants_oracle,
    schubert_poly,
    structure_constants_oracle,
)
from schubsep.sepdesc import (
    StarProblem,
    expansion,
    insert_word,
    is_square_form,
    multi_expansion,
    multi_star_bpd,
    rect,
    rectify,
    split_square,
    star_bpd,
    star_perm,
    structure_constant,
)

from _support import bpd_trace, contained, partitions_in, skew_ssyt, tableau_trace

SEED = 20240611
S4 = all_perms(4)

WORKED = {
    "615243": 1, "534162": 1, "625134": 1, "526143": 1,
    "624153": 2, "7152346": 1, "7142536": 1, "7231546": 1,
}


def _report(n, title, fn):
    t0 = time.perf_counter()
    try:
        detail = fn()
    except AssertionError as err:
        line = f"[FAIL] criterion {n}: {title} ({time.perf_counter() - t0:.1f}s) {err}"
        print(line, flush=True)
        raise
    line = f"[PASS] criterion {n}: {title} ({time.perf_counter() - t0:.1f}s) {detail}"
    print(line, flush=True)


@pytest.fixture
def report(capsys):
    def run(n, title, fn):
        with capsys.disabled():
            print()
            _report(n, title, fn)

    return run


def _separated_triples(perms, ks):
    return [(p, q, k) for p in perms for q in perms for k in ks if has_separated_descents(p, q, k)]


def _bpds(p):
    return sorted(enumerate_bpds(p), key=lambda d: d.tiles)


# ---------------------------------------------------------------------------
# 1


def check_worked_example():
    pi, rho = parse_perm("135264"), parse_perm("513246")
    t0 = time.perf_counter()
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(["sepdesc", "135264", "513246", "-k", "3"])
    assert code == 0, f"exit code {code}"
    printed = {s: int(c) for c, s in re.findall(r"(\d+)\*S\[(\d+)\]", buf.getvalue())}
    assert printed == WORKED, f"command printed {buf.getvalue()!r}"
    e = expansion(pi, rho, 3)
    elapsed = time.perf_counter() - t0
    got = {str(s): c for s, c in e.items()}
    assert got == WORKED, f"expansion {got}"
    assert list(star_perm(pi, rho, 3).values) == [-2, 0, 2, 8, 4, 6, -1, 3, 1, 5, 7, 9]
    assert structure_constant(pi, rho, 3, parse_perm("624153")) == 2
    assert structure_constant(pi, rho, 3, parse_perm("7142536")) == 1
    assert elapsed < 60, f"runtime {elapsed:.1f}s"
    return f"8 terms, c(624153)=2, c(7142536)=1, {elapsed:.2f}s"


def test_criterion_1(report):
    report(1, "worked example 135264 * 513246 at k=3", check_worked_example)


# ---------------------------------------------------------------------------
# 2


def check_s4_exhaustive():
    t0 = time.perf_counter()
    triples = _separated_triples(S4, (1, 2, 3))
    oracle = {}
    for p, q, k in triples:
        if (p, q) not in oracle:
            oracle[p, q] = dict(structure_constants_oracle(p, q))
        got = dict(expansion(p, q, k))
        assert got == oracle[p, q], f"{p} * {q} at k={k}: {got} != {oracle[p, q]}"
    elapsed = time.perf_counter() - t0
    assert elapsed < 300, f"runtime {elapsed:.1f}s"
    return f"{len(triples)} triples"


def test_criterion_2(report):
    report(2, "oracle equality on all separated S4 x S4 x {1,2,3}", check_s4_exhaustive)


# ---------------------------------------------------------------------------
# 3


def check_sampled():
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    counts = {}
    for n, want in ((5, 60), (6, 15)):
        triples = _separated_triples(all_perms(n), range(1, n))
        for p, q, k in rng.sample(triples, want):
            got = dict(expansion(p, q, k))
            ref = dict(structure_constants_oracle(p, q))
            assert got == ref, f"{p} * {q} at k={k}: {got} != {ref}"
        counts[n] = want
    elapsed = time.perf_counter() - t0
    assert elapsed < 1200, f"runtime {elapsed:.1f}s"
    return f"{counts[5]} triples in S5, {counts[6]} in S6"


def test_criterion_3(report):
    report(3, "oracle equality on seeded S5 and S6 samples", check_sampled)


# ---------------------------------------------------------------------------
# 4


def check_bpd_polynomials():
    rng = random.Random(SEED)
    sample = rng.sample(all_perms(5), 40)
    for p in S4 + sample:
        assert bpd_polynomial(p) == schubert_poly(p), f"P_{p} differs from the Schubert polynomial"
    checked = 0
    for p in S4:
        f = bpd_polynomial(p)
        for i in range(1, 4):
            lhs = divided_difference(f, i)
            if p(i) > p(i + 1):
                rhs = bpd_polynomial(mul_simple(p, i, "right"))
            else:
                rhs = SparsePolynomial()
            assert lhs == rhs, f"d_{i} P_{p}"
            checked += 1
    return f"{len(S4) + len(sample)} polynomials, {checked} divided differences"


def test_criterion_4(report):
    report(4, "pipe dream polynomials are Schubert polynomials", check_bpd_polynomials)


# ---------------------------------------------------------------------------
# 5


def _ck_components(words):
    words = set(words)
    comps = []
    while words:
        seed = words.pop()
        comp, todo = {seed}, [seed]
        while todo:
            for v in ck_neighbors(todo.pop()):
                if v in words:
                    words.remove(v)
                    comp.add(v)
                    todo.append(v)
        comps.append(frozenset(comp))
    return set(comps)


def check_eg_suite():
    nwords = 0
    for p in S4:
        words = reduced_words(p)
        pairs = {}
        for w in words:
            pt, qt = eg_insert(w)
            assert (pt, qt) not in pairs, f"EG not injective on {p}"
            pairs[pt, qt] = w
            assert descent_set(qt) == word_descents(w[::-1]), f"Des(Q) for {w}"
        for pt in {pt for pt, _ in pairs}:
            qs = {qt for pp, qt in pairs if pp == pt}
            assert qs == set(standard_tableaux(shape_of(pt))), f"missing Q for P={pt}"
        by_p = {frozenset(ws) for ws in ck_classes(p).values()}
        assert by_p == _ck_components(words), f"CK classes of {p}"
        nwords += len(words)
    return f"{nwords} reduced words over S4"


def test_criterion_5(report):
    report(5, "Edelman-Greene properties on S4", check_eg_suite)


# ---------------------------------------------------------------------------
# 6


def _round_trips(pi, rho, k, n):
    ds, es = _bpds(pi), _bpds(rho)
    for d in ds:
        for e in es:
            f = star_bpd(d, e, k)
            assert is_square_form(f, k, n)
            assert split_square(f, k, n) == (d, e), f"split(star) for {pi}, {rho}, k={k}"
            cf, cd, ce = f.blank_counts(), d.blank_counts(), e.blank_counts()
            for i in range(1, n + 1):
                assert cf.get(i, 0) == cd.get(i, 0) + ce.get(i, 0), f"row {i} blank count"
    square = [f for f in enumerate_bpds(star_perm(pi, rho, k)) if is_square_form(f, k, n)]
    assert len(square) == len(ds) * len(es), f"|BPD^sq| for {pi}, {rho}, k={k}"
    for f in square:
        d, e = split_square(f, k, n)
        assert star_bpd(d, e, k) == f, f"star(split) for {pi}, {rho}, k={k}"
    return len(square)


def check_square_bijection():
    total = _round_trips(parse_perm("13542"), parse_perm("21435"), 3, 5)
    triples = _separated_triples(S4, (1, 2, 3))
    for p, q, k in triples:
        total += _round_trips(p, q, k, 4)
    return f"{total} square-form pipe dreams, 1 + {len(triples)} instances"


def test_criterion_6(report):
    report(6, "square-form bijection and row-wise blank additivity", check_square_bijection)


# ---------------------------------------------------------------------------
# 7


def _additive(f, w):
    lo, hi = min(min(w), f.start), max(max(w) + 1, f.stop)
    g = f.embed(lo, hi)
    s, u = g.perm(), word_product(w, lo, hi)
    return length(u) == len(w) and length(u * s) == len(w) + length(s)


def _insert_common(f, words):
    """Insert each word on one shared window, so results can be compared."""
    lo = min(insert_word(f, w)[0].bpd.start for w in words)
    hi = max([f.stop] + [max(w) + 1 for w in words if w])
    g = f.embed(lo, hi)
    return [insert_word(g, w) for w in words]


def _partitions(n, cap=None):
    cap = n if cap is None else cap
    if n == 0:
        yield ()
        return
    for a in range(min(n, cap), 0, -1):
        for rest in _partitions(n - a, a):
            yield (a,) + rest


def check_round_trip(rng):
    pool = S4 + all_perms(5)
    done = 0
    while done < 200:
        f = rng.choice(_bpds(rng.choice(pool)))
        u = rng.choice(pool)
        if length(u) == 0 or length(u) > 6:
            continue
        w = rng.choice(sorted(reduced_words(u)))
        if not _additive(f, w):
            continue
        m, q = insert_word(f, w)
        back = rectify(m.bpd, order=q, marks=m.marks)
        assert back == (f.embed(m.bpd.start, m.bpd.stop), w), f"round trip for {w}"
        done += 1
    return done


def check_commutations(rng):
    pool = S4 + all_perms(5)
    counts = collections.Counter()
    while min(counts["far-a"], counts["far-b"], counts["braid"]) < 200:
        f = rng.choice(_bpds(rng.choice(pool)))
        kind = rng.choice(("far-a", "far-b", "braid"))
        if kind == "braid":
            i = rng.randint(1, 5)
            pair = [(i, i + 1, i), (i + 1, i, i + 1)]
        else:
            i, j, k = sorted(rng.sample(range(1, 7), 3))
            # ((F<-j)<-i)<-k = ((F<-j)<-k)<-i  and  ((F<-i)<-k)<-j = ((F<-k)<-i)<-j
            pair = [(k, i, j), (i, k, j)] if kind == "far-a" else [(j, k, i), (j, i, k)]
        if not all(_additive(f, w) for w in pair):
            continue
        (a, _), (b, _) = _insert_common(f, pair)
        assert (a.bpd, a.marks) == (b.bpd, b.marks), f"{kind} fails for {pair}"
        counts[kind] += 1
    return counts


def check_order_independence(rng):
    pool = all_perms(3) + S4
    shapes = set()
    runs = 0

    def one(f, w):
        nonlocal runs
        m, _ = insert_word(f, w)
        lam = m.shape()
        base = None
        for order in standard_tableaux(lam):
            g, word = rectify(m.bpd, order=order, marks=m.marks)
            key = (g, eg_insert(word)[0])
            base = base or key
            assert key == base, f"order {order} changes the result for {w}"
            runs += 1
        shapes.add(lam)

    # every shape of size <= 6, via the reading word of a row-shifted increasing tableau
    for size in range(1, 7):
        for lam in _partitions(size):
            pt = tuple(tuple(range(r + 1, r + 1 + m)) for r, m in enumerate(lam))
            w = reading_word(pt)
            assert is_reduced(w) and eg_insert(w)[0] == pt
            for _ in range(3):
                off = rng.randint(0, 2)
                ww = tuple(x + off for x in w)
                f = rng.choice(_bpds(rng.choice(pool)))
                while not _additive(f, ww):
                    f = rng.choice(_bpds(rng.choice(pool)))
                one(f, ww)
    # and random marked pipe dreams
    done = 0
    while done < 100:
        f = rng.choice(_bpds(rng.choice(pool)))
        u = rng.choice(all_perms(5))
        if not 0 < length(u) <= 6:
            continue
        w = rng.choice(sorted(reduced_words(u)))
        if _additive(f, w):
            one(f, w)
            done += 1
    assert all(lam in shapes for n in range(1, 7) for lam in _partitions(n))
    return len(shapes), runs


def check_single_class():
    cases = 0
    for sigma in all_perms(3) + S4:
        for f in _bpds(sigma):
            for u in S4:
                words = sorted(reduced_words(u))
                if not words[0] or not _additive(f, words[0]):
                    continue
                groups = collections.defaultdict(set)
                for w, (m, _) in zip(words, _insert_common(f, words)):
                    groups[m.bpd, m.marks].add(w)
                classes = {frozenset(ws) for ws in ck_classes(u).values()}
                assert {frozenset(g) for g in groups.values()} == classes, f"{f} <- red({u})"
                cases += 1
    return cases


def check_insertion_suite():
    rng = random.Random(SEED)
    trips = check_round_trip(rng)
    comm = check_commutations(rng)
    shapes, runs = check_order_independence(rng)
    cases = check_single_class()
    return (
        f"round trips {trips}; far commutations {comm['far-a']}+{comm['far-b']}; braid {comm['braid']}; "
        f"order independence {runs} runs over {shapes} shapes; single CK class {cases} cases"
    )


def test_criterion_7(report):
    report(7, "insertion/rectification round trip and commutation suite", check_insertion_suite)


# ---------------------------------------------------------------------------
# 8


def check_grassmannian():
    parts = partitions_in(3, 3)
    perm = {lam: grassmannian_perm(lam, 3).embed(1, 6) for lam in parts}
    twos = 0
    checked = 0
    for lam, mu, nu in itertools.product(parts, repeat=3):
        c = structure_constant(perm[lam], perm[mu], 3, perm[nu])
        ref = lr_coefficient(lam, mu, nu)
        assert c == ref, f"c({lam},{mu};{nu}) = {c}, LR gives {ref}"
        twos += c == 2
        checked += 1
    assert structure_constant(perm[2, 1], perm[2, 1], 3, perm[3, 2, 1]) == 2
    return f"{checked} triples, {twos} with coefficient 2"


def test_criterion_8(report):
    report(8, "grassmannian case equals Littlewood-Richardson", check_grassmannian)


# ---------------------------------------------------------------------------
# 9


def check_jdt_simulation():
    cases = 0
    for nu in partitions_in(3, 3):
        if not nu:
            continue
        for mu in partitions_in(3, 3):
            if not contained(mu, nu):
                continue
            for k in range(len(nu), 5):
                for t in skew_ssyt(nu, mu, k):
                    out, steps = tableau_trace(t, k)
                    assert out == jdt_rectify(t), f"{t}, k={k}: tableau rule disagrees with jdt"
                    final, mapped = bpd_trace(t, k)
                    assert final == out, f"{t}, k={k}: final pipe dream disagrees"
                    assert mapped == steps, f"{t}, k={k}: traces differ"
                    cases += 1
    return f"{cases} skew tableaux"


def test_criterion_9(report):
    report(9, "marked tableaux simulate pipe dream rectification step for step", check_jdt_simulation)


# ---------------------------------------------------------------------------
# 10


def _same_grid(a, b):
    hi = max(a.stop, b.stop)
    return a.embed(1, hi) == b.embed(1, hi)


def check_multi():
    def fits(p, lo, hi):
        return all(lo <= d <= hi for d in descents(p))

    problems = []
    for k1, k2 in ((1, 2), (1, 3), (2, 3)):
        for a, b, c in itertools.product(S4, repeat=3):
            if fits(a, 1, k1) and fits(b, k1, k2) and fits(c, k2, 3):
                problems.append(((a, b, c), (k1, k2)))
    rng = random.Random(SEED)
    chosen = rng.sample(problems, 25)
    grids = 0
    for perms, (k1, k2) in chosen:
        sp = StarProblem.make(perms, (k1, k2))
        got = dict(multi_expansion(sp))
        ref = dict(multi_structure_constants_oracle(perms))
        assert got == ref, f"{perms} cuts {(k1, k2)}: {got} != {ref}"
        for d0, d1, d2 in itertools.product(*(_bpds(p) for p in perms)):
            whole = rect(multi_star_bpd(sp, (d0, d1, d2)))
            right = rect(star_bpd(rect(star_bpd(d2, d1, k2)), d0, k1))
            left = rect(star_bpd(d2, rect(star_bpd(d1, d0, k1)), k2))
            assert _same_grid(whole, right) and _same_grid(whole, left), f"associativity for {perms}"
            grids += 1
    return f"{len(chosen)} triples, {grids} pipe dream triples"


def test_criterion_10(report):
    report(10, "three-factor rule and associativity of rect", check_multi)


if __name__ == "__main__":
    failed = 0
    for n, title, fn in [
        (1, "worked example 135264 * 513246 at k=3", check_worked_example),
        (2, "oracle equality on all separated S4 x S4 x {1,2,3}", check_s4_exhaustive),
        (3, "oracle equality on seeded S5 and S6 samples", check_sampled),
        (4, "pipe dream polynomials are Schubert polynomials", check_bpd_polynomials),
        (5, "Edelman-Greene properties on S4", check_eg_suite),
        (6, "square-form bijection and row-wise blank additivity", check_square_bijection),
        (7, "insertion/rectification round trip and commutation suite", check_insertion_suite),
        (8, "grassmannian case equals Littlewood-Richardson", check_grassmannian),
        (9, "marked tableaux simulate pipe dream rectification step for step", check_jdt_simulation),
        (10, "three-factor rule and associativity of rect", check_multi),
    ]:
        try:
            _report(n, title, fn)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
