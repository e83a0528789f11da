import pytest

from unitalpack.fields import (
    FieldElement,
    FieldMismatchError,
    PrimeField,
    QuadExtField,
    is_prime,
)


def test_is_prime():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1) and not is_prime(0) and not is_prime(-3)


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError, match="prime"):
        PrimeField(4)


def test_modulus_is_smallest_irreducible():
    # scan order (b, c); these were re-derived by hand from the square lists
    assert QuadExtField(2).modulus == (1, 1)   # x^2 + x + 1
    assert QuadExtField(3).modulus == (0, 1)   # x^2 + 1
    assert QuadExtField(5).modulus == (0, 2)   # x^2 + 2
    assert QuadExtField(7).modulus == (0, 1)
    for q in (2, 3, 5, 7):
        b, c = QuadExtField(q).modulus
        assert all((t * t + b * t + c) % q for t in range(q))


def test_add_examples():
    F3 = PrimeField(3)
    assert F3.element(2) + F3.element(2) == F3.element(1)
    F9 = QuadExtField(3)
    assert F9.element(1, 1) + F9.element(2, 2) == F9.zero
    for F in (F3, F9):
        for a in F.enumerate():
            assert a + F.zero == a


def test_mul_examples():
    F9 = QuadExtField(3)
    assert F9.x * F9.x == F9.element(2)  # x^2 = -1 = 2 mod 3
    F5 = PrimeField(5)
    assert F5.element(3) * F5.element(4) == F5.element(2)
    for F in (F5, F9):
        for a in F.enumerate():
            assert a * F.one == a


def test_inv_examples():
    F7 = PrimeField(7)
    assert F7.element(3).inverse() == F7.element(5)
    F9 = QuadExtField(3)
    assert F9.x.inverse() == F9.element(0, 2)  # x * 2x = 2x^2 = 1
    assert F9.one.inverse() == F9.one
    assert PrimeField(3).one.inverse() == PrimeField(3).one


def test_zero_has_no_inverse():
    for F in (PrimeField(5), QuadExtField(3)):
        with pytest.raises(ZeroDivisionError, match="zero has no inverse"):
            F.zero.inverse()


def test_field_mismatch():
    a = PrimeField(3).element(1)
    b = PrimeField(5).element(1)
    c = QuadExtField(3).element(1)
    for other in (b, c, 1):
        with pytest.raises(FieldMismatchError, match="field mismatch"):
            a + other  # noqa: B018
    with pytest.raises(FieldMismatchError):
        c * b


def _oracle_mul_gf9(a, b):
    # independent polynomial arithmetic mod 3 with x^2 -> -1
    a0, a1 = a
    b0, b1 = b
    return ((a0 * b0 - a1 * b1) % 3, (a0 * b1 + a1 * b0) % 3)


def test_frobenius_against_repeated_squaring_oracle():
    # x^3 computed by naive cubing: x^2 = -1, so x^3 = -x = 2x
    F9 = QuadExtField(3)
    x = (0, 1)
    x3 = _oracle_mul_gf9(_oracle_mul_gf9(x, x), x)
    assert x3 == (0, 2)
    assert F9.x.frobenius() == F9.element(*x3)
    # full agreement over GF(9): frobenius(a) == a^3 by oracle cubing
    for a in F9.enumerate():
        co = a.coords
        cube = _oracle_mul_gf9(_oracle_mul_gf9(co, co), co)
        assert a.frobenius() == F9.element(*cube)


def test_frobenius_fixes_embedded_base_field():
    for q in (2, 3, 5):
        F = QuadExtField(q)
        for v in range(q):
            e = F.embed(v)
            assert e.frobenius() == e
    assert QuadExtField(3).zero.frobenius() == QuadExtField(3).zero


def test_frobenius_is_an_involution_and_automorphism():
    for q in (2, 3, 5):
        F = QuadExtField(q)
        elems = F.enumerate()
        for a in elems:
            assert a.frobenius().frobenius() == a
        for a in elems:
            for b in elems:
                assert (a * b).frobenius() == a.frobenius() * b.frobenius()
                assert (a + b).frobenius() == a.frobenius() + b.frobenius()


def test_frobenius_rejects_prime_field_operand():
    with pytest.raises(ValueError, match="extension"):
        PrimeField(3).element(2).frobenius()


def test_norm_examples_and_hand_expansion_oracle():
    F9 = QuadExtField(3)
    F3 = PrimeField(3)
    assert F9.one.norm() == F3.one
    assert F9.zero.norm() == F3.element(0)
    # with modulus x^2 + 1: norm(a + bx) = (a+bx)(a-bx) = a^2 + b^2
    for a in range(3):
        for b in range(3):
            assert F9.element(a, b).norm() == F3.element(a * a + b * b)


def test_norm_is_multiplicative_and_lands_in_base():
    for q in (2, 3, 5):
        F = QuadExtField(q)
        base = PrimeField(q)
        for a in F.enumerate():
            assert a.norm().field == base
            for b in F.enumerate():
                assert (a * b).norm() == a.norm() * b.norm()


def test_norm_fiber_sizes():
    # exactly q+1 elements map onto every nonzero base value
    for q in (2, 3, 5, 7):
        F = QuadExtField(q)
        fibers = {}
        for a in F.enumerate():
            fibers.setdefault(a.norm().index, 0)
            fibers[a.norm().index] += 1
        assert fibers[0] == 1
        for v in range(1, q):
            assert fibers[v] == q + 1


def test_enumerate_order():
    F3 = PrimeField(3)
    assert [e.index for e in F3.enumerate()] == [0, 1, 2]
    F9 = QuadExtField(3)
    elems = F9.enumerate()
    assert len(elems) == 9
    assert len(set(elems)) == 9
    assert elems[0] == F9.zero
    assert elems[1] == F9.one
    for q in (2, 5):
        F = QuadExtField(q)
        es = F.enumerate()
        assert len(set(es)) == q * q and es[0] == F.zero and es[1] == F.one


def test_field_axioms_exhaustive_small():
    for F in (PrimeField(2), PrimeField(3), PrimeField(5), QuadExtField(2), QuadExtField(3), QuadExtField(5)):
        elems = F.enumerate()
        for a in elems:
            if a.index:
                assert a * a.inverse() == F.one
            for b in elems:
                assert a + b == b + a
                assert a * b == b * a
        # associativity and distributivity on a full triple scan
        for a in elems:
            for b in elems:
                for c in elems:
                    assert (a + b) + c == a + (b + c)
                    assert (a * b) * c == a * (b * c)
                    assert a * (b + c) == a * b + a * c


def test_field_axioms_random_sample_gf49():
    # larger field: deterministic pseudo-random sample instead of full scan
    F = QuadExtField(7)
    elems = F.enumerate()
    idx = [(i * 19 + 7) % len(elems) for i in range(40)]
    sample = [elems[i] for i in idx]
    for a in sample:
        if a.index:
            assert a * a.inverse() == F.one
        for b in sample:
            assert a + b == b + a
            assert a * b == b * a
            assert (a * b).frobenius() == a.frobenius() * b.frobenius()


def test_pow_and_div():
    F = QuadExtField(3)
    a = F.element(1, 2)
    assert a ** 0 == F.one
    assert a ** 1 == a
    assert a ** 8 == F.one  # group order
    assert a ** -1 == a.inverse()
    assert (a / a) == F.one
    assert -a + a == F.zero


def test_element_hash_and_repr():
    F = QuadExtField(3)
    assert len({F.element(1, 1), F.element(1, 1), F.element(2)}) == 2
    assert "x" in repr(F.x)
    assert isinstance(F.x, FieldElement)
