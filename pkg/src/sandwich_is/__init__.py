"""Sandwich semigroups (IS_n, *_a) of partial injections and their automorphisms."""
