# Tests for clubplex
