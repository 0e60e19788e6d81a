"""Command-line harness: gen, run, verify and sweep."""
