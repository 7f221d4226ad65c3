from .codec import (
    document_for, emit_instance, load_fixture, load_instance, load_topo_semigroup,
    parse_instance, parse_neighborhoods, parse_subset, read_source, to_topo_semigroup,
)
