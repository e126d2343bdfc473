"""Command-line tools for the cdsw toolkit."""
