"""Set-spec parsing, the exact-inequality suite, ratio sweeps and reports."""
