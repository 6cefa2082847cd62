"""Number formatting, combinatorics, seeded randomness and file readers."""
