"""Random recoloring procedures for hypergraph two-coloring."""
