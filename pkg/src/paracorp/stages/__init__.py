"""Graph node functions for the corpus-building pipeline."""
