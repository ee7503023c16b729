"""Acceptance criteria; each test records one PASS/FAIL line for the summary.

Run with ``pytest tests/test_acceptance.py -s`` to also see the progress lines.
"""

import itertools
import time

from starpi import catalog
from starpi.algebra import a_mul, direct_product
from starpi.envelope import build_envelope
from starpi.grassmann import GrassmannElement, colex_subsets, g_involute, g_mul, grade_of_subset
from starpi.identities import (
    check_envelope_lemma,
    evaluate,
    is_graded_star_identity,
    is_star_identity,
    minimal_generators,
)
from starpi.poly import (
    Kind,
    StarPolynomial,
    Variable,
    commutator,
    full_linearization,
    identify_fresh,
    linearization_factor,
    multidegree,
    multihomogeneous_components,
    y,
    z,
)
from starpi.sampling import (
    lemma_sample,
    make_variables,
    random_identity,
    random_multihomogeneous,
    random_multilinear,
    seeded,
)
from starpi.tideal import is_member
from starpi.transforms import (
    VariableSet,
    alternator,
    eta,
    grade_expansions,
    is_symmetric_in,
    s_op,
    t_op,
    tilde,
    transpose_variables,
)
from strategies import soundness_sample

CATALOG = list(catalog.CATALOG)


def _report(record, number, title, failures, detail):
    ok = not failures
    record(number, title, ok, detail if ok else f"{detail}; first failure: {failures[0]}")
    print(f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} [{detail}]")
    assert ok, failures[:3]


def test_criterion_01_operator_laws(record_criterion):
    rng = seeded(1)
    failures = []
    n = 10_000
    for k in range(n):
        f = StarPolynomial.zero()
        for _ in range(rng.randint(1, 2)):
            f = f + random_multilinear(rng, rng.randint(1, 6), max_terms=6)
        if s_op(s_op(f)) != f or t_op(t_op(f)) != f or tilde(tilde(tilde(tilde(f)))) != f:
            failures.append(f)
            continue
        for comp in multihomogeneous_components(f):
            tt = tilde(tilde(comp))
            st, ts = s_op(t_op(comp)), t_op(s_op(comp))
            if tt not in (comp, -comp) or st not in (ts, -ts):
                failures.append(comp)
    _report(record_criterion, 1, "operator laws s^2 = t^2 = id, tilde^2 = ±id, st = ±ts", failures,
            f"{n} polynomials of degree <= 6")


def test_criterion_02_envelope_lemma(record_criterion):
    algebras = [catalog.get(n) for n in CATALOG]
    samples = 50
    failures = []
    counts = {"identities": 0, "non-identities": 0}
    for A in algebras:
        rng = seeded(f"lemma-{A.name}")
        for _ in range(samples):
            f = lemma_sample(rng, A, max_degree=4)
            mini = check_envelope_lemma(A, f)
            exh = check_envelope_lemma(A, f, n_generators=minimal_generators(f) + 2, exhaustive=True)
            counts["identities" if mini.lhs else "non-identities"] += 1
            if not (mini.agree and exh.agree and mini.rhs == exh.rhs):
                failures.append((A.name, str(f), mini.lhs, mini.rhs, exh.rhs))
    _report(record_criterion, 2, "graded identity on A iff tilde(f) on the envelope, both modes", failures,
            f"{len(algebras)} algebras x {samples} samples; {counts['identities']} identities, "
            f"{counts['non-identities']} non-identities")


def _alternator_product(rng):
    """Product of alternators over grade-1 sets, with grade-0 spectators mixed in."""
    n_sets = rng.randint(1, 3)
    sets, factors = [], []
    nxt = {Kind.SYM: 1, Kind.SKEW: 1}

    def fresh(kind, grade):
        v = Variable(kind, nxt[kind], grade)
        nxt[kind] += 1
        return v

    for _ in range(n_sets):
        kind = rng.choice(list(Kind))
        S = [fresh(kind, 1) for _ in range(rng.randint(2, 3))]
        spectators = [fresh(rng.choice(list(Kind)), 0) for _ in range(rng.randint(0, 2))]
        letters = S + spectators
        rng.shuffle(letters)
        factors.append(alternator(VariableSet(S), StarPolynomial({tuple(letters): rng.randint(1, 3)})))
        sets.append(S)
    f = factors[0]
    for g in factors[1:]:
        if rng.random() < 0.5:
            f = f * StarPolynomial.from_variable(fresh(Kind.SYM, 0))
        f = f * g
    return f, sets


def test_criterion_03_alternators_become_symmetric(record_criterion):
    rng = seeded(3)
    n = 250
    failures = []
    for _ in range(n):
        f, sets = _alternator_product(rng)
        g = tilde(f)
        for S in sets:
            bad = any(transpose_variables(g, u, v) != g for u, v in itertools.combinations(S, 2))
            if bad or not is_symmetric_in(VariableSet(S), g) or set(g.variables()) != set(f.variables()):
                failures.append((str(f), S))
    _report(record_criterion, 3, "tilde of an alternator product is symmetric in every set", failures,
            f"{n} products")


def test_criterion_04_grassmann_structure(record_criterion):
    failures = []
    for n in range(0, 9):
        for S in colex_subsets(n):
            e = GrassmannElement.basis(n, S)
            sym = g_involute(e) == e
            if sym != (len(S) % 4 in (0, 1)) or (not sym and g_involute(e) != -e):
                failures.append(("involution", n, S))
    for n in range(1, 6):
        basis = [GrassmannElement.basis(n, S) for S in colex_subsets(n)]
        for a, b, c in itertools.product(basis, repeat=3):
            if g_mul(g_mul(a, b), c) != g_mul(a, g_mul(b, c)):
                failures.append(("associativity", n))
    for n in range(1, 9):
        subsets = list(colex_subsets(n))
        for S, T in itertools.product(subsets, repeat=2):
            if set(S) & set(T):
                continue
            p = g_mul(GrassmannElement.basis(n, S), GrassmannElement.basis(n, T))
            if any(grade_of_subset(U) != (grade_of_subset(S) + grade_of_subset(T)) % 4 for U in p.terms):
                failures.append(("grading", n, S, T))
    _report(record_criterion, 4, "Grassmann involution, associativity and grading", failures,
            "involution and grading n <= 8, associativity n <= 5")


def test_criterion_05_envelope_commutative(record_criterion):
    R = build_envelope(catalog.grassmann_algebra(3), 3).realized
    failures = []
    nonzero = 0
    for p, q in itertools.product(range(R.dim), repeat=2):
        u, v = R.basis_element(p), R.basis_element(q)
        uv = a_mul(u, v)
        if uv != a_mul(v, u):
            failures.append((R.basis_names[p], R.basis_names[q]))
        if p and q and not uv.is_zero():  # index 0 is the unit 1 ⊗ 1
            nonzero += 1
    if not nonzero:
        failures.append("every product of non-unit basis elements vanishes")
    _report(record_criterion, 5, "E4(E) commutative and not nilpotent (base 3, envelope 3)", failures,
            f"dim {R.dim}, {nonzero} nonzero non-unit products")


def test_criterion_06_known_identities(record_criterion):
    failures = []
    M2T, M2S = catalog.m2_transpose(), catalog.m2_symplectic()
    if not is_star_identity(M2T, commutator(z(1), z(2))).holds:
        failures.append("[z1,z2] on M2 transpose")
    rep = is_star_identity(M2T, commutator(y(1), y(2)))
    again = is_star_identity(M2T, commutator(y(1), y(2)))
    if rep.holds or rep.witness != again.witness or evaluate(rep.polynomial, rep.witness, M2T).is_zero():
        failures.append("[y1,y2] on M2 transpose")
    if not is_star_identity(M2S, commutator(z(1), y(1))).holds:
        failures.append("[z1,y1] on M2 symplectic")
    E6 = catalog.grassmann_algebra(6)
    for kinds in itertools.product(list(Kind), repeat=3):
        x = [StarPolynomial.from_variable(Variable(k, i + 1)) for i, k in enumerate(kinds)]
        if not is_star_identity(E6, commutator(commutator(x[0], x[1]), x[2])).holds:
            failures.append(f"[[x1,x2],x3] with kinds {kinds} on E6")
    _report(record_criterion, 6, "known identities on M2 and E", failures,
            "witness " + ", ".join(f"{v}={e}" for v, e in rep.witness.items()))


def test_criterion_07_tideal_membership(record_criterion):
    C = commutator(z(1), z(2))
    failures = []
    for f in (C, y(1) * C, C * y(1)):
        if not is_member([C], f):
            failures.append(f"{f} should be a member")
    if is_member([C], commutator(y(1), y(2))):
        failures.append("[y1,y2] should not be a member")
    rng = seeded(7)
    n_rows = 0
    for k in range(50):
        A = catalog.get(CATALOG[k % len(CATALOG)])
        S, D, rows = soundness_sample(rng, A)
        for r in rows:
            n_rows += 1
            if not is_graded_star_identity(A, r).holds:
                failures.append((A.name, str(S[0]), str(r)))
    _report(record_criterion, 7, "*T-ideal membership and soundness against the checker", failures,
            f"50 (S, D) samples, {n_rows} consequences checked")


def test_criterion_08_eta(record_criterion):
    failures = []
    if [eta(t) for t in range(4)] != [0, 0, 1, 1]:
        failures.append("table")
    for x, w in itertools.product(range(4), repeat=2):
        lhs = (eta(x) + eta(w)) % 2
        if x % 2 and w % 2:
            if lhs != (eta((x + w) % 4) + 1) % 2:
                failures.append(("both odd", x, w))
        elif lhs != eta((x + w) % 4) % 2:
            failures.append(("one even", x, w))
    _report(record_criterion, 8, "eta table and its congruences", failures, "all 16 pairs")


def test_criterion_09_linearization(record_criterion):
    rng = seeded(9)
    n = 500
    failures = []
    for _ in range(n):
        degrees = [rng.randint(1, 3) for _ in range(rng.randint(1, 3))]
        p = random_multihomogeneous(rng, degrees, graded=rng.random() < 0.5)
        back = identify_fresh(full_linearization(p))
        if back != p.scale(linearization_factor(multidegree(p))):
            failures.append(str(p))
    _report(record_criterion, 9, "full linearization round trip gives prod d_i! times the input", failures,
            f"{n} polynomials, per-variable degree <= 3")


def test_criterion_10_grade_expansions(record_criterion):
    rng = seeded(10)
    algebras = [catalog.get(n) for n in CATALOG]
    n = 100
    failures = []
    verdicts = {True: 0, False: 0}
    for k in range(n):
        A = algebras[k % len(algebras)]
        f = None
        if k % 2:  # every other sample is an identity of A by construction, when one exists
            kinds = [(rng.choice(list(Kind)), None) for _ in range(rng.randint(1, 3))]
            f = random_identity(rng, A, make_variables(kinds, graded=False))
        if f is None:
            f = random_multilinear(rng, rng.randint(1, 3), graded=False, max_terms=4)
        plain = is_star_identity(A, f).holds
        conj = all(is_graded_star_identity(A, g).holds for g in grade_expansions(f))
        verdicts[plain] += 1
        if plain != conj:
            failures.append((A.name, str(f)))
    _report(record_criterion, 10, "non-graded verdict equals the conjunction over grade expansions", failures,
            f"{n} polynomials; {verdicts[True]} hold, {verdicts[False]} fail")
