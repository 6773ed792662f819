# Test package for qftlab
