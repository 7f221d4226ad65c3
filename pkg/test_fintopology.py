"""
Finite topologies: generation, closure operators, separation, products,
subspaces, quotients and continuity
"""
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from app.models.errors import BadParams, SubsetOutOfRange
from app.services.bitsets import full_mask, mask_of, members
from app.services.finsemigroup import Partition, h_structure
from app.services.fintopology import (
    FinTopology, discrete_topology, generate_topology, indiscrete_topology,
    is_continuous, is_continuous_at, partition_topology, product_topology,
    quotient_topology, separation_flags, subspace_topology, topology_from_masks,
    topology_from_opens,
)

SIERPINSKI = FinTopology(2, [0b01, 0b11])


def subbases(max_n: int = 6):
    return st.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.integers(min_value=0, max_value=full_mask(n)), max_size=5),
        )
    )


class TestConstruction:
    def test_open_counts(self):
        assert len(discrete_topology(4).opens) == 16
        assert indiscrete_topology(4).opens == (0, 15)
        assert SIERPINSKI.opens == (0, 1, 3)

    def test_subbase_out_of_range(self):
        with pytest.raises(SubsetOutOfRange):
            generate_topology(3, [[0, 3]])

    def test_empty_ground_set(self):
        with pytest.raises(BadParams):
            generate_topology(0, [])

    def test_opens_must_form_lattice(self):
        with pytest.raises(BadParams):
            topology_from_opens(3, [[], [0], [1], [0, 1, 2]])
        with pytest.raises(BadParams):
            topology_from_opens(2, [[0], [0, 1]])

    def test_from_opens_round_trip(self):
        T = topology_from_opens(3, [[], [0], [0, 1], [0, 1, 2]])
        assert [members(m) for m in T.min_nbhd] == [[0], [0, 1], [0, 1, 2]]

    def test_non_transitive_min_nbhds_rejected(self):
        with pytest.raises(BadParams):
            FinTopology(3, [0b011, 0b110, 0b100])

    def test_count_opens_stops_at_cap(self):
        T = discrete_topology(20)
        assert T.count_opens(cap=100) > 100

    def test_partition_topology(self, z6):
        T = partition_topology(h_structure(z6).h_partition)
        assert members(T.min_nbhd[5]) == [1, 5]
        assert len(T.opens) == 16


class TestClosure:
    def test_fixture_closures(self, ex2_1, ex2_3):
        assert members(ex2_1.T.closure(mask_of([2]))) == [2, 4, 6, 8]
        assert members(ex2_3.T.closure(mask_of([1]))) == [1, 2, 4, 5]
        assert ex2_3.T.closure(mask_of([0, 1, 3, 4])) == ex2_3.T.full
        assert ex2_3.T.is_dense(mask_of([0, 1, 3, 4]))

    def test_components(self, ex2_3):
        assert [members(c) for c in ex2_3.T.components()] == [[0, 3], [1, 2, 4, 5]]
        assert len(ex2_3.T.clopens()) == 4

    def test_literal_atoms(self, ex2_3_literal):
        T = ex2_3_literal.T
        assert len(T.opens) == 8
        assert members(T.closure(mask_of([1]))) == [1, 2, 4, 5]
        K = mask_of([0, 1, 3, 4])
        assert T.closure(K) == T.full
        assert not T.is_closed(K)
        assert [members(c) for c in T.components()] == [[0], [1, 2, 4, 5], [3]]
        assert not separation_flags(T).connected


@hyp_settings(max_examples=60, deadline=None)
@given(subbases(), st.data())
def test_closure_interior_duality(spec, data):
    n, subbase = spec
    T = topology_from_masks(n, subbase)
    A = data.draw(st.integers(min_value=0, max_value=full_mask(n)))
    assert T.closure(A) == T.full & ~T.interior(T.full & ~A)
    assert T.is_open(T.interior(A))
    assert T.is_closed(T.closure(A))
    assert T.check_lattice()
    for s in subbase:
        assert T.is_open(s)


class TestSeparation:
    def test_discrete(self):
        flags = separation_flags(discrete_topology(3))
        assert flags.t0 and flags.t1 and flags.t2 and flags.regular and flags.normal
        assert flags.discrete and flags.metrizable
        assert not flags.connected

    def test_indiscrete(self):
        flags = separation_flags(indiscrete_topology(2))
        assert not flags.t0 and not flags.t2
        assert flags.regular and flags.normal and flags.connected

    def test_sierpinski(self):
        flags = separation_flags(SIERPINSKI)
        assert flags.t0 and not flags.t1 and not flags.t2
        assert not flags.regular
        assert flags.connected and flags.locally_connected

    def test_non_t0(self, ex2_3):
        flags = separation_flags(ex2_3.T)
        assert not flags.t0
        assert not flags.connected
        assert flags.annotations["separable"] == "trivially-true-on-finite"


class TestConstructions:
    def test_product(self):
        P = product_topology(discrete_topology(2), indiscrete_topology(2))
        assert P.min_nbhd == (0b0011, 0b0011, 0b1100, 0b1100)

    def test_subspace(self, ex2_3):
        sub = subspace_topology(ex2_3.T, mask_of([1, 3]))
        assert sub == discrete_topology(2)

    def test_quotient_by_h(self, ex2_3):
        Q = quotient_topology(ex2_3.T, h_structure(ex2_3.S).h_partition)
        assert Q.opens == (0, 6, 9, 15)

    def test_literal_quotient_by_h(self, ex2_3_literal):
        # classes c0={0}, c1={1,5}, c2={2,4}, c3={3}
        Q = quotient_topology(ex2_3_literal.T, h_structure(ex2_3_literal.S).h_partition)
        assert Q.opens == (0, 1, 6, 7, 8, 9, 14, 15)
        assert not Q.is_open(0b0010)

    def test_quotient_of_indiscrete(self):
        p = Partition.from_lists(4, [[0, 1], [2, 3]])
        assert quotient_topology(indiscrete_topology(4), p) == indiscrete_topology(2)


class TestContinuity:
    def test_identity(self):
        identity = lambda x: x
        assert is_continuous(identity, discrete_topology(2), indiscrete_topology(2))
        assert not is_continuous(identity, indiscrete_topology(2), discrete_topology(2))
        assert not is_continuous(identity, SIERPINSKI, discrete_topology(2))

    def test_pointwise(self):
        identity = lambda x: x
        assert is_continuous_at(identity, SIERPINSKI, discrete_topology(2), 0)
        assert not is_continuous_at(identity, SIERPINSKI, discrete_topology(2), 1)

    def test_constant_is_continuous(self, ex2_3):
        assert is_continuous(lambda x: 0, ex2_3.T, discrete_topology(3))
