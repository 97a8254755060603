"""Acceptance gate: one test and one reported line per criterion.

Each criterion runs its full battery within the stated runtime budget; the
conftest hook prints the pass/fail lines in the terminal summary.
"""

import time

from chowtwist import chow, cli, gmodules, verify


def _run(battery_fn, **kw):
    t0 = time.time()
    checks = battery_fn(**kw)
    elapsed = time.time() - t0
    bad = [c for c in checks if not c["ok"]]
    return checks, bad, elapsed


def _detail(bad):
    return "; ".join("%s (expected %s, computed %s)"
                     % (c["name"], c["expected"], c["computed"]) for c in bad[:3])


def test_criterion_1_cyclic_battery(criterion):
    checks, bad, el = _run(verify.battery_cyclic)
    criterion("criterion 1: cyclic closed forms vs resolution oracles "
              "(%d checks, %.1fs)" % (len(checks), el),
              not bad and el < 30, _detail(bad) or "runtime %.1fs" % el)


def test_criterion_2_quaternion_exponent_gap(criterion):
    checks, bad, el = _run(verify.battery_quaternion)
    criterion("criterion 2: Q8 second syzygy of Z, H^2=Z/8 vs transfer image "
              "exponent 4 (%d checks, %.1fs)" % (len(checks), el),
              not bad and el < 60, _detail(bad) or "runtime %.1fs" % el)


def test_criterion_3_klein_closed_forms(criterion):
    checks, bad, el = _run(verify.battery_klein)
    criterion("criterion 3: Klein dimension formulas, m=1..5, degrees 0..3 "
              "(%d checks, %.1fs)" % (len(checks), el),
              not bad and el < 60, _detail(bad) or "runtime %.1fs" % el)


def test_criterion_4_counterexample_dimensions(criterion):
    checks, bad, el = _run(verify.battery_counterexample)
    criterion("criterion 4: motivic 2m+2 vs Chow m+3 with kernel m-1, m=2..6 "
              "(%d checks, %.1fs)" % (len(checks), el),
              not bad and el < 120, _detail(bad) or "runtime %.1fs" % el)


def test_criterion_5_counterexample_lattices(criterion):
    checks, bad, el = _run(verify.battery_coflasque)
    criterion("criterion 5: counterexample lattice ranks and coflasqueness, "
              "m=2..6 (%d checks, %.1fs)" % (len(checks), el),
              not bad and el < 30, _detail(bad) or "runtime %.1fs" % el)


def test_criterion_6_regularity(criterion):
    checks, bad, el = _run(verify.battery_regularity)
    criterion("criterion 6: Betti shape (m; m+2; 2) and regularity "
              "floor((m-1)/2), m=2..8 (%d checks, %.1fs)" % (len(checks), el),
              not bad and el < 10, _detail(bad) or "runtime %.1fs" % el)


def test_criterion_7_property_suites(criterion):
    t0 = time.time()
    checks = []
    checks += verify.battery_transfer()            # cor.res and double cosets
    checks += verify.battery_coflasque_random(50)  # randomized resolutions
    checks += verify.battery_periodicity()         # Euler/Tate periodicity
    checks += verify.battery_delta_squared()       # delta^2 = 0 to degree 6
    el = time.time() - t0
    bad = [c for c in checks if not c["ok"]]
    criterion("criterion 7: property suites (transfers, double cosets, 50 "
              "random resolutions, periodicity, delta^2) "
              "(%d checks, %.1fs)" % (len(checks), el),
              not bad and el < 120, _detail(bad) or "runtime %.1fs" % el)


def test_criterion_8_exclusions(criterion):
    # statements about general varieties are out of scope by design: the
    # closed forms refuse unfamiliar groups instead of guessing
    code = cli.main(["twisted-chow", "--group", "/tmp/nonexistent-s3.json",
                     "--module", "trivialZ", "--degree", "1"])
    parse_refused = code == cli.EXIT_PARSE
    import itertools
    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    from chowtwist.groups import FiniteGroup
    from chowtwist.errors import UnsupportedFamilyError
    from chowtwist.gmodules import make_trivial
    S3 = FiniteGroup(table, name="S3")
    try:
        chow.twisted_chow_cyclic(S3, make_trivial(S3), 1)
        refused = False
    except UnsupportedFamilyError:
        refused = True
    criterion("criterion 8: out-of-scope inputs refused rather than guessed",
              parse_refused and refused)
