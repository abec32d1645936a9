"""Paracorp: building, correcting, mining and evaluating a sentence-aligned parallel corpus."""
