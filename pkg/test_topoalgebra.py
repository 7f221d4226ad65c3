"""
Topological algebra: continuity, band-of-topological-groups classification,
star sets, bases, neighborhood systems and the topologies they generate
"""
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from app.models.errors import (
    AxiomsViolated, BadParams, MissingIdempotentFamily, NotABaseAtIdempotent,
    NotBotg, NotCryptogroup,
)
from app.services.bitsets import full_mask, is_subset, mask_of, members
from app.services.finsemigroup import generate, h_structure
from app.services.fintopology import (
    discrete_topology, generate_topology, partition_topology, topology_from_masks,
)
from app.services.topoalgebra import (
    TRIVIALIZED, TopoSemigroup, base_transport, centralizer, check_mult_continuity,
    classes_open, h_classes_clopen, hom_check, is_base_at, mult_continuity_witness,
    mult_continuous_by_preimages, neighborhood_axiom_check, open_filter,
    open_filter_system, power_preidem, quotient_by_h, rho_classes_open_criterion,
    separation_per_hclass, special_sets, star, star_UV, star_Ux, star_xU, star_xUy,
    sufficient_condition_holds, topology_from_h_discrete, topology_from_neighborhoods,
    verify_base_properties, verify_star_theorems,
)


def subset(*elements) -> int:
    return mask_of(elements)


B = subset(2, 4, 6, 8)


def z10_system(**families):
    """Neighborhood system on Z10 keyed by idempotent"""
    system = {0: [subset(0)], 1: [subset(1)], 5: [subset(5)], 6: [B]}
    for key, family in families.items():
        system[int(key.lstrip("e"))] = family
    return system


class TestClassification:
    def test_ex2_1(self, ex2_1):
        flags = ex2_1.flags
        assert flags.is_topological_cryptogroup
        assert flags.is_botg_criterion and flags.is_botg_definitional
        assert flags.mult_witness is None

    def test_ex2_2(self, ex2_2):
        assert ex2_2.is_botg

    def test_ex2_3(self, ex2_3):
        flags = ex2_3.flags
        assert flags.is_topological_cryptogroup
        assert not flags.is_botg_criterion
        assert not flags.is_botg_definitional

    def test_literal_ex2_3_is_discontinuous(self, ex2_3_literal):
        flags = ex2_3_literal.flags
        assert not flags.is_topological_semigroup
        x, y = flags.mult_witness
        S, m = ex2_3_literal.S, ex2_3_literal.T.min_nbhd
        assert not is_subset(S.product_set(m[x], m[y]), m[S.mul(x, y)])

    def test_literal_ex2_2_is_discontinuous(self):
        S = generate("zn_mul", n=15)
        T = generate_topology(15, [[0], [3], [6], [9], [12], [5], [10], [1, 2, 4, 7, 8, 11, 13, 14]])
        TS = TopoSemigroup(S, T)
        assert not TS.flags.is_topological_semigroup
        assert mult_continuity_witness(TS) is not None

    def test_not_cryptogroup(self):
        TS = TopoSemigroup(generate("null", n=3), discrete_topology(3))
        flags = TS.flags
        assert flags.mult_continuous
        assert not flags.inversion_continuous
        assert not flags.is_topological_cryptogroup
        assert not TS.is_botg

    def test_continuity_methods_agree(self, z6):
        TS = TopoSemigroup(z6, generate_topology(6, [[1], [0, 2, 3, 4, 5]]))
        by_neighborhoods = mult_continuity_witness(TS) is None
        assert by_neighborhoods == mult_continuous_by_preimages(TS)
        assert check_mult_continuity(TS) == by_neighborhoods

    def test_size_mismatch(self, z6):
        with pytest.raises(BadParams):
            TopoSemigroup(z6, discrete_topology(5))

    def test_sufficient_condition(self, ex2_1, ex2_3):
        assert sufficient_condition_holds(ex2_1)
        assert not sufficient_condition_holds(ex2_3)

    def test_h_classes_clopen(self, ex2_1, ex2_2):
        assert h_classes_clopen(ex2_1)
        assert h_classes_clopen(ex2_2)

    def test_open_class_criterion(self, ex2_1, ex2_3):
        for TS in (ex2_1, ex2_3):
            H = TS.h.h_partition
            assert classes_open(TS.T, H) == rho_classes_open_criterion(TS.T, H)
        assert not classes_open(ex2_3.T, ex2_3.h.h_partition)


@hyp_settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=full_mask(6)), max_size=4))
def test_classification_routes_agree_on_z6(subbase):
    """Raises InvariantViolation if the two routes ever disagree"""
    TS = TopoSemigroup(generate("zn_mul", n=6), topology_from_masks(6, subbase))
    flags = TS.flags
    if flags.is_topological_cryptogroup:
        assert flags.is_botg_definitional == flags.is_botg_criterion
    if TS.is_botg:
        assert all(TS.T.is_open(b) for b in TS.h.h_partition.blocks)


class TestStarSets:
    def test_star_values(self, ex2_1):
        S, h = ex2_1.S, ex2_1.h
        assert star_xU(S, h, 2, B) == B
        assert star_xU(S, h, 2, subset(5)) == 0
        assert star_xU(S, h, 3, subset(1)) == subset(3)

    def test_idempotent_translate_is_identity(self, ex2_1):
        S, h = ex2_1.S, ex2_1.h
        U = subset(2, 8)
        assert star_xU(S, h, 6, U) == U
        assert star_Ux(S, h, U, 6) == U

    def test_dense_set_cover(self, ex2_1):
        S, h = ex2_1.S, ex2_1.h
        D = subset(0, 1, 2, 3, 5, 7, 9)
        U = subset(0, 1, 5) | B
        assert ex2_1.T.is_dense(D)
        assert star_UV(S, h, U, D) == S.full
        assert star_UV(S, h, D, U) == S.full

    def test_two_sided_needs_same_class(self, ex2_1):
        assert star_xUy(ex2_1.S, ex2_1.h, 3, ex2_1.S.full, 2) == 0

    def test_three_way_identity(self, ex2_1):
        S, h = ex2_1.S, ex2_1.h
        for x in range(10):
            for y in range(10):
                for U in (B, subset(1, 3), subset(0, 5, 6), S.full):
                    a = star_Ux(S, h, star_xU(S, h, x, U), y)
                    b = star_xU(S, h, x, star_Ux(S, h, U, y))
                    assert a == b == star_xUy(S, h, x, U, y)

    def test_star_dispatch(self, ex2_1):
        assert star(ex2_1, "xU", x=3, U=subset(1)) == subset(3)
        assert star(ex2_1, "UV", U=subset(2), V=B) == B

    def test_star_rejects_bad_arguments(self, ex2_1, ex2_3):
        with pytest.raises(BadParams):
            star(ex2_1, "xVy", x=1)
        with pytest.raises(BadParams):
            star(ex2_1, "xUy", x=1, U=B)
        with pytest.raises(BadParams):
            star(ex2_1, "xU", x=10, U=B)
        with pytest.raises(NotCryptogroup):
            star(TopoSemigroup(generate("null", n=2), discrete_topology(2)), "xU", x=0, U=1)

    def test_star_theorems(self, ex2_1, ex2_2):
        for TS in (ex2_1, ex2_2):
            results = verify_star_theorems(TS, sample_cap=64)
            assert [r.theorem for r in results] == [
                "dense-star-cover", "closure-inside-star", "star-three-way-identity",
            ]
            assert all(r.passed for r in results)
            assert all(r.checks > 0 for r in results)

    def test_star_theorems_need_botg(self, ex2_3):
        with pytest.raises(NotBotg):
            verify_star_theorems(ex2_3)


class TestBases:
    def test_open_filter_is_base(self, ex2_1):
        for x in range(10):
            assert is_base_at(ex2_1.T, x, open_filter(ex2_1.T, x))
        assert not is_base_at(ex2_1.T, 1, [ex2_1.T.full])

    def test_transport(self, ex2_1):
        family = base_transport(ex2_1, 3, open_filter(ex2_1.T, 1))
        assert subset(3) in family
        right = base_transport(ex2_1, 4, open_filter(ex2_1.T, 6), side="right")
        assert all(U == B for U in right)

    def test_transport_needs_a_base(self, ex2_1):
        with pytest.raises(NotABaseAtIdempotent):
            base_transport(ex2_1, 3, [ex2_1.T.full])
        with pytest.raises(BadParams):
            base_transport(ex2_1, 3, open_filter(ex2_1.T, 1), side="up")

    def test_base_properties(self, ex2_1):
        results = {r.theorem: r for r in verify_base_properties(ex2_1)}
        assert all(r.passed for r in results.values())
        assert not results["base-meet-is-point"].applicable

    def test_base_properties_hausdorff(self, z6):
        TS = TopoSemigroup(z6, discrete_topology(6))
        results = {r.theorem: r for r in verify_base_properties(TS)}
        assert all(r.passed for r in results.values())
        assert results["base-meet-is-point"].applicable
        assert results["base-meet-is-point"].note == TRIVIALIZED


class TestNeighborhoodSystems:
    def test_fixture_system_rebuilds_ex2_1(self, ex2_1, z10):
        system = z10_system(e1=[subset(1), subset(0, 1, 5)])
        assert neighborhood_axiom_check(z10, system).all_hold
        assert topology_from_neighborhoods(z10, system) == ex2_1.T

    def test_open_filter_round_trip(self, ex2_1, ex2_2):
        for TS in (ex2_1, ex2_2):
            system = open_filter_system(TS)
            assert topology_from_neighborhoods(TS.S, system) == TS.T

    def test_asymmetric_family_violates_axiom_one(self, z10):
        system = z10_system(e6=[subset(2, 6)])
        report = neighborhood_axiom_check(z10, system)
        assert 1 in report.failed
        with pytest.raises(AxiomsViolated) as e:
            topology_from_neighborhoods(z10, system)
        assert 1 in e.value.detail["failed"]

    def test_missing_and_extra_families(self, z10):
        system = z10_system()
        del system[6]
        with pytest.raises(MissingIdempotentFamily) as e:
            neighborhood_axiom_check(z10, system)
        assert e.value.detail["missing"] == [6]

        system = z10_system()
        system[2] = [B]
        with pytest.raises(MissingIdempotentFamily):
            neighborhood_axiom_check(z10, system)

    def test_member_must_contain_idempotent(self, z10):
        with pytest.raises(BadParams):
            neighborhood_axiom_check(z10, z10_system(e1=[subset(3)]))

    def test_h_discrete(self, z6, z10):
        for S in (z6, z10):
            assert topology_from_h_discrete(S) == partition_topology(h_structure(S).h_partition)
        with pytest.raises(NotCryptogroup):
            topology_from_h_discrete(generate("zn_mul", n=4))


class TestHomomorphisms:
    def test_identity(self, ex2_1):
        result = hom_check(ex2_1, ex2_1, list(range(10)))
        assert result.is_hom and result.is_continuous
        assert all(result.cont_at)

    def test_projection_to_h_quotient(self, ex2_1):
        Q = quotient_by_h(ex2_1)
        result = hom_check(ex2_1, Q, list(ex2_1.h.h_partition.class_of))
        assert result.is_hom and result.is_continuous

    def test_identity_to_finer_topology(self, z6, ex2_3):
        discrete = TopoSemigroup(z6, discrete_topology(6))
        assert hom_check(discrete, ex2_3, list(range(6))).is_continuous
        result = hom_check(ex2_3, discrete, list(range(6)))
        assert not result.is_continuous
        assert not any(result.cont_at)

    def test_idempotent_retraction(self, ex2_3):
        result = hom_check(ex2_3, ex2_3, list(ex2_3.h.zero))
        assert result.is_hom
        assert result.is_continuous

    def test_map_out_of_range(self, ex2_1):
        with pytest.raises(BadParams):
            hom_check(ex2_1, ex2_1, [0] * 9)
        with pytest.raises(BadParams):
            hom_check(ex2_1, ex2_1, [10] * 10)


class TestSpecialSets:
    def test_commutative_centralizer(self, z10):
        assert centralizer(z10, 3) == z10.full

    def test_rectangular_band_centralizer(self):
        S = generate("rectangular_band", r=2, c=2)
        assert members(centralizer(S, 1)) == [1]

    def test_power_preidem(self, z6):
        assert members(power_preidem(z6, 1)) == [0, 1, 3, 4]
        assert power_preidem(z6, 2) == z6.full

    def test_report(self, z6, ex2_1):
        report = special_sets(TopoSemigroup(z6, discrete_topology(6)))
        assert report.hausdorff and report.annotation == TRIVIALIZED
        assert report.idempotent_set.subset == [0, 1, 3, 4]
        assert report.idempotent_set.closed

        report = special_sets(ex2_1, ts=[3], ks=[2])
        assert not report.hausdorff and report.annotation is None
        assert report.centralizers[3].subset == list(range(10))


class TestSeparationPerClass:
    def test_ex2_1(self, ex2_1):
        report = separation_per_hclass(ex2_1)
        t2 = report.flags["t2"]
        assert not t2.global_value
        assert t2.per_class == [True, True, False, True]
        assert report.chain_holds
        assert not any(report.chain.values())

    def test_discrete(self, z10):
        report = separation_per_hclass(TopoSemigroup(z10, discrete_topology(10)))
        assert all(report.chain.values())

    def test_needs_botg(self, ex2_3):
        with pytest.raises(NotBotg):
            separation_per_hclass(ex2_3)


def test_quotient_by_h(ex2_1):
    Q = quotient_by_h(ex2_1)
    assert Q.n == 4
    assert Q.T == discrete_topology(4)
    assert Q.is_botg
