"""Define a diagonal system, inspect its derived constants, and run the
exact non-singularity validation.

A diagonal system is a set of simultaneous equations sum_j c_j x_j^l = 0
with no cross terms.  The solvability theory needs every set of r
columns of the coefficient matrix to be linearly independent; the
checker verifies this with exact integer determinants.
"""

from diaglab import make_system, serialize_system, validate_system
from diaglab.systems import derived_constants

# the running example throughout these demos: three plus-squares against
# two minus-squares in five variables
form = make_system(5, [(2, [1, 1, 1, -1, -1])])
print(serialize_system(form))

dc = derived_constants(form)
print(f"equations r={dc.r}, total degree K={dc.K}, max degree k={dc.k}")

report = validate_system(form)
for degree, verdict in report.block_verdicts.items():
    print(f"degree {degree}: non-singular={verdict.verdict} "
          f"(checked {verdict.subsets_checked} column subsets)")
print("all blocks pass:", report.all_blocks_pass)

# a broken system: two proportional columns in a 2-equation block
bad = make_system(3, [(2, [1, 2, 1]), (2, [2, 4, 5])])
bad_report = validate_system(bad)
print("broken system passes:", bad_report.all_blocks_pass,
      "| singular columns:", bad_report.block_verdicts[2].bad_columns)
