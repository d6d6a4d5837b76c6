"""
Extending the catalog with a spec file
======================================

New algebras, geometries, limits and dual pairs can be declared in a small
text format and verified by the same suites as the built-in rows.
"""

from pathlib import Path

from kingeom.speccli.cli import main
from kingeom.speccli.loader import format_spec, merge_into_catalog
from kingeom.speccli.parser import SpecError, parse_spec
from kingeom.suites import Catalog, run_verification

SPEC = """
# Poincare again, under a new name, built from the flat generator families.
algebra my_p { time H; trans P; boost K; rot J; }

# Minkowski space housed by that algebra.
geometry flat {
  algebra my_p;
  g[0][0] = 1;  g[1][1] = -1;  g[2][2] = -1;  g[3][3] = -1;
  h[0][0] = 1;  h[1][1] = -1;  h[2][2] = -1;  h[3][3] = -1;
  ranks 4, 4;
  signature "(+,-,-,-;)";
  curvature 0;
}

contract d_+ -> my_p { rule l_to_inf; }
contract dS -> flat { rule l_to_inf; }
dual flat <-> P';
"""

# Parsing gives plain declarations; formatting them back gives canonical text.
document = parse_spec(SPEC)
print(format_spec(document))

# Merge into a catalog and run every suite restricted to the new rows.
catalog = merge_into_catalog(document, Catalog())
report = run_verification(only="flat", catalog=catalog)
for check in report.checks:
    print(f"{check.status:<5} {check.kind:<13} {check.subject}")

# Mistakes are reported with a line and a column.
try:
    parse_spec("geometry broken {\n  algebra my_q;\n}")
except SpecError as error:
    print("error:", error)

# The command line accepts the same files with --spec.
extensions = Path(__file__).resolve().parent.parent / "tests" / "data" / "extensions.kgs"
main(["verify", "--spec", str(extensions), "--suite", "duality", "--only", "flat"])
