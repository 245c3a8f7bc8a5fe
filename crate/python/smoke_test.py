"""Smoke test for the gtkit extension module.

Run with `python python/smoke_test.py` or `pytest python/`.
"""

import json

import gtkit


def t(j, shift=0):
    return {"rat": str(shift), "sym": {f"t{j}": "1"}}


CRIT34 = [[t(1)], [t(2), t(3)], [t(4), t(4), t(4)], [t(5), t(6), t(7), t(8)]]


def test_findim():
    m = gtkit.FinDimModule([2, 1, 0])
    assert m.dim == 8 == gtkit.weyl_dimension([2, 1, 0])
    assert m.commutator_failures() == []
    assert m.central_failures() == []
    e12 = m.matrix("E12")
    assert len(e12) == 8 and all(isinstance(x, str) for row in e12 for x in row)


def test_gamma_poly():
    assert gtkit.gamma_poly(1, 1) == "x1_1"


def test_singularity_of_five_row_point():
    rows = [
        [t(6)],
        [t(5), t(5)],
        [t(3), t(3, 1), t(4)],
        [t(1), t(2, -1), t(2), t(1, 1)],
        [t(j) for j in range(7, 12)],
    ]
    assert gtkit.singularity(rows) == "((1),(2),(2,1),(2,2),(1,1,1,1,1))"
    assert gtkit.singularity(json.dumps(rows)) == gtkit.singularity(rows)
    assert not gtkit.is_fully_critical(rows)
    sigma, shift, point = gtkit.normalize(rows)
    assert not gtkit.is_normal_form(rows)
    assert gtkit.is_normal_form(point)
    assert gtkit.singularity(point) == gtkit.singularity(rows)
    assert sigma != "id" and len(shift) == 5


def test_module_action_and_support():
    m = gtkit.Module(CRIT34)
    assert m.singularity == "((1),(1,1),(3),(1,1,1,1))"
    d = m.tableau_at([[0], [0, 0], [1, 0, 0]], "(4 5)")
    assert d.shuffle == "(4 5)"
    out = m.act("E32", d)
    assert out and all(isinstance(c, str) for _, c in out)
    assert len(m.lattice_act("E32", d)) == len(out)
    window = m.derived(0)
    assert len(window) == 1 and window[0].shuffle == "id"
    support = m.support(0)
    assert len(support) == 1 and support[0]["multiplicity"] == 1
    g = m.gamma_action(3, 1, [[0], [0, 0], [1, 1, 0]])
    assert len(g["basis"]) == 3 and g["nilpotency_holds"]


def test_errors_carry_their_kind():
    try:
        gtkit.FinDimModule([0, 1])
    except gtkit.GtError as e:
        assert e.args[0] == "NotDominant"
    else:
        raise AssertionError("expected GtError")


def test_cli_entry_point():
    code, text = gtkit.run(["verify-findim", "--weight", "2,1,0"])
    report = json.loads(text)
    assert code == 0 and report["result"]["dimension"] == 8


def test_identities_small_bound():
    reports = gtkit.verify_identities(trials=5, seed=1, bound=2)
    assert reports and all(ok for *_, ok in reports)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print("ok", name)
