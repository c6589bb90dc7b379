import random
from fractions import Fraction

import pytest

from curvemul import tools
from curvemul.curve import AffinePlace
from curvemul.engine import (
    InstanceError,
    InstanceSpec,
    OpReport,
    aggregate_bound,
    compile_instance,
    embed_x,
    embed_y,
    reference_mul,
    verify_good_basis,
)
from curvemul.galois import F2
from curvemul.linalg import rank

NAMES = ("f16_13", "f4_5", "f2_5")
SPECS = {name: tools.load_bundled(name) for name in NAMES}
COMPILED = {name: compile_instance(spec) for name, spec in SPECS.items()}

# exact per-multiplication scalar/bilinear counts for the three instances
EXPECTED_COUNTS = {
    "f16_13": (702, 27, 675),
    "f4_5": (110, 12, 99),
    "f2_5": (110, 18, 99),
}


def random_operand(rng, spec):
    return [rng.randrange(spec.field.order) for _ in range(spec.n)]


def test_embed_x_layout():
    spec = SPECS["f2_5"]
    assert embed_x(spec, (1, 0, 1, 0, 0)) == [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]
    assert embed_x(spec, (0,) * 5) == [0] * 11


def test_embed_y_layout():
    spec = SPECS["f2_5"]
    assert embed_y(spec, (1, 0, 0, 0, 0)) == [1] + [0] * 10
    # y_2 lands right after the first n slots
    assert embed_y(spec, (0, 1, 0, 0, 0)) == [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0]
    assert embed_y(spec, (0,) * 5) == [0] * 11


def test_embed_rejects_wrong_length():
    spec = SPECS["f4_5"]
    with pytest.raises(ValueError):
        embed_x(spec, (1, 0, 0))
    with pytest.raises(ValueError):
        embed_y(spec, (0,) * 6)


def test_reference_mul_basics():
    q = (1, 0, 0, 1, 0, 1)  # x^5 + x^3 + 1
    x = (1, 0, 1, 1, 0)
    assert reference_mul(F2, q, x, (1, 0, 0, 0, 0)) == x
    assert reference_mul(F2, q, x, (0, 0, 0, 0, 0)) == (0, 0, 0, 0, 0)
    # b^4 * (b^2 + b^3) = b^6 + b^7, reduced with b^5 = b^3 + 1
    assert reference_mul(F2, q, (0, 0, 0, 0, 1), (0, 0, 1, 1, 0)) == (1, 1, 1, 1, 1)


def test_published_first_examples():
    got, _ = COMPILED["f16_13"].multiply(
        [2, 1] + [0] * 11, [1, 2, 2] + [0] * 10
    )
    assert list(got) == [2, 5, 6, 2] + [0] * 9
    got, _ = COMPILED["f4_5"].multiply([2, 1, 0, 0, 0], [1, 2, 2, 0, 0])
    assert list(got) == [2, 2, 1, 2, 0]
    got, _ = COMPILED["f2_5"].multiply([1, 1, 0, 0, 0], [1, 1, 1, 0, 0])
    assert list(got) == [1, 0, 0, 1, 0]


def test_oracle_equivalence_random():
    for name in NAMES:
        spec, compiled = SPECS[name], COMPILED[name]
        rng = random.Random(hash(name) & 0xFFFF)
        for _ in range(200):
            x = random_operand(rng, spec)
            y = random_operand(rng, spec)
            want = reference_mul(spec.field, spec.q_modulus, x, y)
            got, _ = compiled.multiply(x, y)
            assert got == want


def test_commutativity():
    for name in NAMES:
        spec, compiled = SPECS[name], COMPILED[name]
        rng = random.Random(91)
        for _ in range(50):
            x = random_operand(rng, spec)
            y = random_operand(rng, spec)
            assert compiled.multiply(x, y)[0] == compiled.multiply(y, x)[0]


def test_identity_and_absorbing():
    for name in NAMES:
        spec, compiled = SPECS[name], COMPILED[name]
        one = [1] + [0] * (spec.n - 1)
        zero = [0] * spec.n
        rng = random.Random(17)
        for _ in range(20):
            x = random_operand(rng, spec)
            assert list(compiled.multiply(x, one)[0]) == x
            assert compiled.multiply(x, zero)[0] == tuple(zero)


def test_bilinearity_in_first_argument():
    spec, compiled = SPECS["f4_5"], COMPILED["f4_5"]
    rng = random.Random(5)
    for _ in range(25):
        x1 = random_operand(rng, spec)
        x2 = random_operand(rng, spec)
        y = random_operand(rng, spec)
        xs = [a ^ b for a, b in zip(x1, x2)]
        z1 = compiled.multiply(x1, y)[0]
        z2 = compiled.multiply(x2, y)[0]
        zs = compiled.multiply(xs, y)[0]
        assert zs == tuple(a ^ b for a, b in zip(z1, z2))


def test_op_report_exact():
    for name in NAMES:
        spec, compiled = SPECS[name], COMPILED[name]
        n, g = spec.n, spec.g
        rng = random.Random(3)
        x = random_operand(rng, spec)
        y = random_operand(rng, spec)
        _, report = compiled.multiply(x, y)
        want = EXPECTED_COUNTS[name]
        assert (report.step1_scalar, report.step2_bilinear, report.step3_scalar) == want
        assert report.step1_scalar == 2 * n * (2 * n + g - 1)
        assert report.step3_scalar == (2 * n - 1) * (2 * n + g - 1)
        assert report.total == sum(want)
        assert compiled.expected_report == report
        assert OpReport.expected(n, g, compiled.place_degrees) == report


def test_op_report_constant_across_inputs():
    compiled = COMPILED["f2_5"]
    _, r1 = compiled.multiply([1, 0, 1, 1, 0], [0, 1, 1, 0, 1])
    _, r2 = compiled.multiply([0, 0, 0, 0, 0], [1, 1, 1, 1, 1])
    assert r1 == r2


def test_aggregate_bound_values():
    assert aggregate_bound(13, 2, 1) == 1420
    assert aggregate_bound(5, 2, 2) == 236
    assert aggregate_bound(5, 2, 4) == 251
    assert aggregate_bound(5, 2, 2) == Fraction(236, 1)
    for name in NAMES:
        spec, compiled = SPECS[name], COMPILED[name]
        bound = aggregate_bound(spec.n, spec.g, max(compiled.place_degrees))
        assert compiled.expected_report.total <= bound


def test_selected_places_are_deterministic():
    # frozen selections; f4_5 and f2_5 both exercise the same-degree fallback
    assert [p.label for p in COMPILED["f16_13"].places] == [
        f"P_{i}" for i in range(2, 29)
    ]
    assert [p.label for p in COMPILED["f4_5"].places] == [
        "P_inf_1", "P_inf_2", "P_3", "P_4", "P_5", "P_6", "P_7", "P_8", "P_9", "Q_2",
    ]
    assert [p.label for p in COMPILED["f2_5"].places] == [
        "P_inf_1", "P_inf_2", "P_3", "Q_1", "Q_2", "R_2",
    ]


def test_rank_certificate():
    for name, want in (("f16_13", 27), ("f4_5", 11), ("f2_5", 11)):
        compiled = COMPILED[name]
        assert rank(compiled.T) == want
        assert sum(compiled.place_degrees) == want


def test_injectivity_flag_is_advisory_only():
    # none of the bundled instances satisfy the sufficient degree-sum
    # condition; correctness rests on the rank certificate instead
    for name in NAMES:
        assert not COMPILED[name].meets_injectivity_bound


def test_good_basis_report_all_ok():
    for name in NAMES:
        checks = verify_good_basis(SPECS[name])
        assert len(checks) == SPECS[name].size
        assert all(c.ok for c in checks)


def test_tampered_basis_rejected():
    spec = SPECS["f2_5"]
    tampered = list(spec.basis)
    tampered[1], tampered[2] = tampered[2], tampered[1]
    bad = InstanceSpec(
        "tampered", spec.field, spec.curve, spec.n, spec.q_place,
        spec.d1_den, spec.d2_den, tampered, spec.candidate_places,
    )
    with pytest.raises(InstanceError, match="good-basis"):
        compile_instance(bad)


def test_duplicate_candidate_rejected():
    spec = SPECS["f2_5"]
    with pytest.raises(InstanceError, match="duplicates"):
        InstanceSpec(
            "dup", spec.field, spec.curve, spec.n, spec.q_place,
            spec.d1_den, spec.d2_den, spec.basis,
            list(spec.candidate_places) + [spec.candidate_places[0]],
        )


def test_equal_denominators_rejected():
    spec = SPECS["f2_5"]
    with pytest.raises(InstanceError, match="distinct"):
        InstanceSpec(
            "same-d", spec.field, spec.curve, spec.n, spec.q_place,
            spec.d1_den, spec.d1_den, spec.basis, spec.candidate_places,
        )


def test_q_presentation_must_use_residue_generator():
    spec = SPECS["f2_5"]
    res = spec.q_place.residue
    shifted = AffinePlace(
        res, res.add(res.gen(), res.one()), spec.q_place.y_img, "Q'"
    )
    with pytest.raises(InstanceError, match="residue generator"):
        InstanceSpec(
            "bad-q", spec.field, spec.curve, spec.n, shifted,
            spec.d1_den, spec.d2_den, spec.basis, spec.candidate_places,
        )


def test_too_few_candidates_fail_at_compile():
    spec = SPECS["f2_5"]
    starved = InstanceSpec(
        "starved", spec.field, spec.curve, spec.n, spec.q_place,
        spec.d1_den, spec.d2_den, spec.basis, spec.candidate_places[:3],
    )
    with pytest.raises(InstanceError, match="reach only"):
        compile_instance(starved)


def test_multiply_rejects_bad_operands():
    spec, compiled = SPECS["f4_5"], COMPILED["f4_5"]
    with pytest.raises(ValueError):
        compiled.multiply([1, 2], [0, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        compiled.multiply([0, 0, 0, 0, 0], [0, 0, 0, 0, 4])
