import json
import random
from dataclasses import replace

import pytest

from htacert.centralizer import integral_unit_scan
from htacert.certifier import (
    EXAMPLES,
    Status,
    VerdictKind,
    candidate_polynomials,
    certificate_to_dict,
    certify,
    corrupted_table,
    render_report,
    reproduce_paper,
    search,
)
from htacert.intmat import IntMatrix, char_poly, companion
from htacert.numfield import load_bundled_field_data, verify_field_data
from htacert.periodic import per_count
from htacert.polyalg import IntPoly, has_unimodular_root, is_irreducible, signature

TABLE = load_bundled_field_data()
PIPELINE = [
    "unimodular",
    "irreducible",
    "hyperbolic",
    "rank_one_signature",
    "field_data",
    "centralizer",
    "torsion_power_of_two",
    "fixed_point_count",
    "odd_prime_count",
]


def comp(s: str) -> IntMatrix:
    return companion(IntPoly.parse(s))


def test_fixed_point_example():
    cert = certify(IntMatrix([[0, 1], [1, 5]]))
    assert cert.verdict.kind is VerdictKind.APPLICABLE
    assert "FixedPoint" in cert.verdict.approaches
    assert cert.per_counts[1].count == 5
    assert [c.name for c in cert.checks] == PIPELINE


def test_odd_prime_example_with_bundled_data():
    cert = certify(comp("x^3-x^2-1"), table=TABLE)
    assert str(cert.verdict) == "Applicable{OddPrime(5)}"
    assert cert.per_counts[5].count - cert.per_counts[1].count == 10


def test_cubic_without_data_is_indeterminate():
    cert = certify(comp("x^3-x^2-1"))
    assert cert.verdict.kind is VerdictKind.INDETERMINATE
    assert cert.verdict.reason == "FieldDataMissing"
    assert "fundamental_unit" in cert.verdict.missing
    assert "fundamental_unit" in render_report(cert)


def test_torsion_six_is_inapplicable_despite_counts():
    cert = certify(comp("x^4+6x^3+10x^2+3x+1"), table=TABLE)
    assert str(cert.verdict) == "Inapplicable{TorsionOrderNotPowerOfTwo}"
    assert cert.check("torsion_power_of_two").evidence["torsion_order"] == 6
    assert cert.per_counts[1].count == 21 > 16
    assert cert.per_counts[3].count - 21 == 546


def test_centralizer_not_generated_by_A():
    cert = certify(IntMatrix([[2, 5], [5, 12]]))
    assert str(cert.verdict) == "Inapplicable{CentralizerNotGeneratedByA}"
    assert cert.centralizer.B == IntMatrix([[0, 1], [1, 2]])
    assert cert.first_failure.name == "centralizer"
    assert "first failed check: centralizer" in render_report(cert)


@pytest.mark.parametrize(
    "A, reason",
    [
        (IntMatrix([[2, 1], [1, 2]]), "NotUnimodular"),
        (comp("x^2+x+1"), "NotHyperbolic"),
        (comp("x^4-x^2-2x-1"), "NotIrreducible"),
        # totally real cubic: unit rank 2
        (comp("x^3-3x+1"), "SignatureRankNotOne"),
        (comp("x^3-4x^2+3x+1"), "SignatureRankNotOne"),
    ],
)
def test_inapplicable_reasons(A, reason):
    cert = certify(A, table=TABLE)
    assert cert.verdict.kind is VerdictKind.INAPPLICABLE
    assert cert.verdict.reason == reason
    statuses = [c.status for c in cert.checks]
    first = statuses.index(Status.FAIL)
    assert all(s is Status.PASS for s in statuses[:first])


def test_corrupted_field_data_is_indeterminate():
    p = IntPoly.parse("x^4+2x^3-2x+1")
    cert = certify(companion(p), table=corrupted_table())
    assert cert.verdict.kind is VerdictKind.INDETERMINATE
    assert cert.verdict.reason == "FieldDataVerificationFailed"
    assert "index" in cert.verdict.missing


def test_scan_limit_is_indeterminate():
    cert = certify(IntMatrix([[18, 5], [65, 18]]), s_max=2)
    assert cert.verdict.reason == "ScanLimitExceeded"
    assert cert.check("centralizer").evidence["bound"] == 3


def test_prime_cap_is_honest():
    cert = certify(IntMatrix([[0, 1], [1, 1]]), prime_cap=3)
    # fixed-point test fails (1 <= 4) and no admissible prime <= 3
    assert str(cert.verdict) == "Inapplicable{CountThresholdsNotMet}"
    assert cert.check("odd_prime_count").evidence["prime"] is None


def test_dimension_out_of_range():
    with pytest.raises(ValueError):
        certify(IntMatrix([[2]]))
    with pytest.raises(ValueError):
        certify(IntMatrix.identity(5))


def test_determinism():
    A = comp("x^4+2x^3-2x+1")
    a = certificate_to_dict(certify(A, table=TABLE))
    b = certificate_to_dict(certify(A, table=TABLE))
    assert a == b


def test_applicable_evidence_reproduced_by_modules():
    for name, A, _ in EXAMPLES:
        cert = certify(A, table=TABLE)
        if cert.verdict.kind is not VerdictKind.APPLICABLE:
            continue
        p = char_poly(A)
        assert cert.check("irreducible").status is Status.PASS and is_irreducible(p)
        assert not has_unimodular_root(p)
        sig = signature(p)
        ev = cert.check("rank_one_signature").evidence
        assert (ev["r1"], ev["r2"]) == (sig.r1, sig.r2)
        fd = TABLE.get(p)
        if fd is not None:
            report = verify_field_data(p, fd)
            assert report.ok and report.index == cert.order_index
            desc = integral_unit_scan(A, fd)
            assert desc.B.tolist() == cert.check("centralizer").evidence["B"]
            assert desc.torsion_order == cert.torsion_order
        for k, entry in cert.per_counts.items():
            assert per_count(A, k) == entry.count


def test_reproduce_paper_all_rows_pass():
    rows = reproduce_paper()
    assert len(rows) == 9
    failing = [(r.name, r.expected, r.computed) for r in rows if not r.passed]
    assert not failing


def test_reproduce_paper_with_corrupted_table_fails_a_row():
    rows = reproduce_paper(corrupted_table())
    bad = [r.name for r in rows if not r.passed]
    assert bad == ["x^4+2x^3-2x+1"]


# --- search ---------------------------------------------------------------------

def test_candidate_enumeration():
    got = [str(p) for p in candidate_polynomials(2, 0)]
    assert got == ["x^2-1", "x^2+1"]
    assert sum(1 for _ in candidate_polynomials(3, 2)) == 2 * 25


def test_search_quadratics():
    results = {str(c.char_poly): str(c.verdict) for c in search(2, 5)}
    assert "FixedPoint" in results["x^2-5x-1"]
    small = {str(c.char_poly): str(c.verdict) for c in search(2, 1)}
    assert small["x^2-x-1"] == "Applicable{OddPrime(5)}"
    assert small["x^2+x+1"] == "Inapplicable{NotHyperbolic}"


def test_search_cubics_without_data():
    results = {str(c.char_poly): c.verdict for c in search(3, 1)}
    assert results["x^3-x^2-1"].kind is VerdictKind.INDETERMINATE
    with_data = {str(c.char_poly): c.verdict for c in search(3, 1, fd_table=TABLE)}
    assert str(with_data["x^3-x^2-1"]) == "Applicable{OddPrime(5)}"


def test_search_order_invariance():
    polys = list(candidate_polynomials(2, 2))
    forward = {(str(p), str(certify(companion(p)).verdict)) for p in polys}
    random.Random(0).shuffle(polys)
    shuffled = {(str(p), str(certify(companion(p)).verdict)) for p in polys}
    assert forward == shuffled == {(str(c.char_poly), str(c.verdict)) for c in search(2, 2)}


def test_search_parallel_matches_serial():
    serial = [str(c.verdict) for c in search(2, 2)]
    parallel = [str(c.verdict) for c in search(2, 2, workers=2)]
    assert serial == parallel


# --- reports ------------------------------------------------------------------------

def test_human_report_names_open_sets_and_evidence():
    cert = certify(comp("x^2-8x-1"))
    text = render_report(cert, "human")
    assert "U_1" in text and "U_3" in text
    for value in ("8", "528", "17"):
        assert value in text


def test_structured_report_schema():
    cert = certify(comp("x^4+2x^3-2x+1"), table=TABLE)
    doc = json.loads(render_report(cert, "structured"))
    for key in (
        "schema_version",
        "input_matrix",
        "char_poly",
        "checks",
        "verdict",
        "per_counts",
        "torsion_order",
        "centralizer",
        "certification_level",
    ):
        assert key in doc
    assert doc["verdict"]["kind"] == "Applicable"
    assert doc["verdict"]["approaches"] == ["OddPrime(3)"]
    assert doc["per_counts"]["3"] == 26
    assert doc["torsion_order"] == 4
    assert set(doc["centralizer"]) >= {"B", "J", "generated_by_A"}
    assert all(set(c) == {"name", "status", "evidence"} for c in doc["checks"])


def test_inapplicable_report_carries_note_not_claim():
    cert = certify(IntMatrix([[2, 5], [5, 12]]))
    assert cert.notes
    assert "every f in the open set" not in render_report(cert)


def test_render_rejects_unknown_format():
    with pytest.raises(ValueError):
        render_report(certify(IntMatrix([[0, 1], [1, 5]])), "xml")


def test_field_data_override():
    p = IntPoly.parse("x^3-x^2-1")
    fd = TABLE[p]
    bad = replace(fd, fundamental_unit=tuple(-c for c in fd.fundamental_unit))
    # -eps is still a fundamental unit
    assert certify(companion(p), fd=bad).verdict.kind is VerdictKind.APPLICABLE
