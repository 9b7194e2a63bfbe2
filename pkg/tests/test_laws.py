import pytest

from bindsyn.laws import SUITES, check_fold_morphism, check_lambek, check_module, check_monad, run_suite
from bindsyn.quotient import presentable
from bindsyn.sigfile import fixture_path, load_signature
from bindsyn.signature import SIGMA_LC, SIGMA_LJ, SIGMA_LL
from bindsyn.stdmodels import free_vars_model, lj_to_ll_model, redex_model, size_model


@pytest.mark.parametrize("sig", [SIGMA_LC, SIGMA_LJ, SIGMA_LL], ids=lambda s: s.name)
def test_syntax_laws_hold(sig):
    for check in (check_monad, check_module, check_lambek):
        report = check(sig, 300, seed=5)
        assert report.passed, report.failures
        assert report.checked >= 300


def test_family_signatures():
    sf = load_signature(fixture_path("quotients.sig.json"))
    assert check_monad(sf.signature, 200).passed
    assert check_module(sf.signature, 200).passed


@pytest.mark.parametrize("m", [free_vars_model(), size_model(), redex_model(), lj_to_ll_model()], ids=lambda m: m.name)
def test_fold_is_a_morphism(m):
    assert check_fold_morphism(m, 200).passed


def test_reports_are_reproducible():
    a = run_suite("monad", presentable(SIGMA_LC), 50, 9)[0]
    b = run_suite("monad", presentable(SIGMA_LC), 50, 9)[0]
    assert a.to_json() == b.to_json()


def test_run_suite_dispatch():
    p = load_signature(fixture_path("esubst.sig.json")).presentation
    for suite in SUITES[:4]:
        assert all(r.passed for r in run_suite(suite, p, 50, 0))
    assert len(run_suite("model", presentable(SIGMA_LC), 50, 0, free_vars_model())) == 2
    with pytest.raises(ValueError):
        run_suite("model", p, 10, 0)
    with pytest.raises(ValueError):
        run_suite("bogus", p, 10, 0)
