"""Exact computations for morphisms from Azumaya points and circles: commuting matrix tuples, orbit data, Higgsing and torus branes."""
