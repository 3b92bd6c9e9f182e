"""Group formulas, many-sorted formulas over the census structure, and the compiler between them."""
