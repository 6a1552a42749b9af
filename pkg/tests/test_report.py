import copy

from toricfrob.catalog import SMOOTH_CATALOG, catalog
from toricfrob.report import render_text, run_chain, run_report


def _strip_timing(report):
    out = copy.deepcopy(report)
    out.pop("timing_ms", None)
    return out


def test_report_deterministic():
    fan = catalog("hirzebruch(2)")
    a = run_report(fan)
    b = run_report(fan)
    assert _strip_timing(a) == _strip_timing(b)


def test_report_p2_verdicts():
    rep = run_report(catalog("projective(2)"))
    v = rep["verdicts"]
    assert v["projective_space"] is True
    assert v["extremal_fano"] is True
    assert v["a"] == {"num": 1, "den": 1}
    assert all(c["status"] == "pass" for c in rep["cross_checks"])


def test_report_no_floats():
    rep = _strip_timing(run_report(catalog("delpezzo(2)")))

    def walk(x):
        assert not isinstance(x, float), x
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, (list, tuple)):
            for v in x:
                walk(v)

    walk(rep)


def test_cross_checks_pass_on_catalog():
    for name in SMOOTH_CATALOG + ["fatal_example", "zero_nef_surface"]:
        rep = run_report(catalog(name), e_list=[1, 2])
        for chk in rep["cross_checks"]:
            assert chk["status"] in ("pass", "skipped"), (name, chk)


def test_singular_fan_skips_smooth_checks():
    rep = run_report(catalog("fatal_example"), e_list=[1])
    skipped = {c["name"] for c in rep["cross_checks"] if c["status"] == "skipped"}
    assert "support_big_iff_projective_space" in skipped
    assert rep["verdicts"]["projective_space"] is None
    assert rep["verdicts"]["birationally_inert_fano"] is True


def test_report_invalid_fan_short_circuits():
    from toricfrob.fan import Fan

    bad = Fan(dim=2, rays=((1, 0), (0, 1)), max_cones=((0, 1),), name="bad")
    rep = run_report(bad)
    assert not rep["diagnostics"]["valid"]
    assert "class_group" not in rep


def test_render_text():
    text = render_text(run_report(catalog("projective(2)")))
    assert "a=1 n=1" in text
    assert "check big_pairing: pass" in text


def test_run_chain_delpezzo3():
    out = run_chain(catalog("delpezzo(3)"))
    assert "error" not in out
    assert 1 <= len(out["steps"]) <= 3
    assert out["terminal"]["eff_equals_nef"] is True


def test_run_chain_reports_error():
    out = run_chain(catalog("hirzebruch(2)"))
    assert out["error"]["type"] == "NotInert"
