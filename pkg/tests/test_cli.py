import json

import pytest

from odequiv.cli import main


GENERIC = """\
# generic test equation
[equation]
a0 = x*y - 1
a1 = y^2/3
a2 = x + 2
a3 = x^2*y
"""

GENERIC_MAPPED = GENERIC + """
[map]
f1 = x + y^2/10
f2 = y + x^2/10
"""

FLAT = """\
[equation]
a0 = 0
"""

WORKED = """\
[equation]
a0 = y^2
a3 = 1
"""

X_ONLY = """\
[equation]
a0 = x
a1 = x
a2 = 1
a3 = x^2 + 1
"""


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        f = tmp_path / name
        f.write_text(text)
        return str(f)
    return write


def run_json(capsys, argv):
    code = main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_analyze_reports_exact_invariants(files, capsys):
    f = files("eq.ode", WORKED)
    code, rep = run_json(capsys, ["analyze", f, "--point", "0,0"])
    assert code == 0
    assert rep["relative_invariants"] == {"F1": "6", "F2": "0", "F3": "648"}
    assert rep["orbit"] == "Orb3_0"
    assert not rep["linearizable_at_point"]
    assert rep["nu"]["components"] == {"0,0,0": "648"}


def test_analyze_order_4_includes_scalar_invariants(files, capsys):
    f = files("eq.ode", GENERIC)
    code, rep = run_json(capsys, ["analyze", f, "--point", "1/2,-1/3",
                                  "--order", "4"])
    assert code == 0
    inv = rep["scalar_invariants"]
    assert set(inv) == {"I%d" % k for k in range(1, 7)}
    for v in inv.values():
        assert set(v) == {"r", "e", "approx"}
        assert "/" in v["r"] or v["r"].lstrip("-").isdigit()


def test_orbit_of_flat_equation(files, capsys):
    f = files("flat.ode", FLAT)
    code, rep = run_json(capsys, ["orbit", f, "--order", "2"])
    assert code == 0
    assert rep["orbit"] == "Orb2_2"


def test_linearizable_flat_and_generic(files, capsys):
    flat = files("flat.ode", FLAT)
    code, rep = run_json(capsys, ["linearizable", flat, "--point", "0,0"])
    assert code == 0 and rep["linearizable_at_samples"] is True
    assert len(rep["samples"]) == 9
    gen = files("gen.ode", GENERIC)
    code, rep = run_json(capsys, ["linearizable", gen, "--point", "1,1"])
    assert code == 0 and rep["linearizable_at_samples"] is False


def test_invariants_command(files, capsys):
    f = files("eq.ode", GENERIC)
    code, rep = run_json(capsys, ["invariants", f, "--point", "1/2,-1/3"])
    assert code == 0
    from odequiv.rat import Q
    from odequiv.expr import parse_coeff, section_jet
    from odequiv.invariants import f_invariants
    coeffs = tuple(parse_coeff(s) for s in
                   ("x*y - 1", "y^2/3", "x + 2", "x^2*y"))
    f3 = f_invariants(section_jet(coeffs, (Q(1, 2), Q(-1, 3)), 3))[2]
    assert rep["F3"] == str(f3)
    assert len(rep["lie_derivatives"]) == 12
    assert "xi1(I1)" in rep["lie_derivatives"]


def test_equiv_positive_pushforward(files, capsys):
    f1 = files("a.ode", GENERIC)
    f2 = files("b.ode", GENERIC_MAPPED)
    code, rep = run_json(capsys, ["equiv", f1, f2,
                                  "--point1", "1/2,-1/3",
                                  "--point2", "1/2,-1/3",
                                  "--grid", "0,0:1,1:1,1"])
    assert code == 0
    assert rep["verdict"] == "NecessaryConditionsPass"
    assert rep["first"]["invariants"] == rep["second"]["invariants"]


def test_equiv_negative(files, capsys):
    f1 = files("a.ode", GENERIC)
    f2 = files("b.ode", GENERIC.replace("a0 = x*y - 1",
                                        "a0 = x*y - 1 + 5/7*x^3"))
    code, rep = run_json(capsys, ["equiv", f1, f2,
                                  "--point1", "1/2,-1/3",
                                  "--point2", "1/2,-1/3",
                                  "--grid", "0,0:1,1:1,1"])
    assert code == 1
    assert rep["verdict"] == "NecessaryConditionsFail"
    assert "reason" in rep


def test_equiv_case_mismatch(files, capsys):
    f1 = files("a.ode", GENERIC)
    f2 = files("b.ode", X_ONLY)
    code, rep = run_json(capsys, ["equiv", f1, f2,
                                  "--point1", "1/2,-1/3",
                                  "--point2", "1/2,-1/3",
                                  "--grid", "0,0:1,1:2,2"])
    assert code == 2
    assert rep["verdict"] == "CaseMismatch"


def test_pushforward_with_verification(files, capsys):
    f = files("m.ode", GENERIC_MAPPED)
    code, rep = run_json(capsys, ["pushforward", f, "--point", "1/2,-1/3",
                                  "--order", "2", "--verify"])
    assert code == 0
    assert rep["round_trip_exact"] is True
    assert rep["image"] != rep["point"]


def test_pushforward_requires_a_map(files, capsys):
    f = files("eq.ode", GENERIC)
    assert main(["pushforward", f]) == 3
    err = capsys.readouterr().err
    assert "[map]" in err


def test_malformed_inputs_exit_3(files, capsys):
    bad = files("bad.ode", "[equation]\na0 = x +\n")
    assert main(["analyze", bad]) == 3
    good = files("good.ode", GENERIC)
    assert main(["analyze", good, "--point", "zebra"]) == 3
    assert main(["analyze", good, "--order", "1"]) == 3
    assert main(["invariants", good, "--point", "0,0"]) in (0, 3)


def test_json_output_is_deterministic(files, capsys):
    f = files("eq.ode", WORKED)
    main(["analyze", f, "--format", "json"])
    first = capsys.readouterr().out
    main(["analyze", f, "--format", "json"])
    second = capsys.readouterr().out
    assert first == second
    json.loads(first)


def test_text_output_contains_values(files, capsys):
    f = files("eq.ode", WORKED)
    code = main(["analyze", f])
    out = capsys.readouterr().out
    assert code == 0
    assert "F3: 648" in out
