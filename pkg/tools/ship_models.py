"""Regenerate the shipped files under models/.

Run from the repository root:  python3 tools/ship_models.py

Ships every built-in model except the 36-dimensional double (kept as a
built-in only, to hold the file-based verification suite well under the
runtime budget), the two restriction morphisms onto the subgroups of the
six-element symmetric group, and one group table for the build-group
verb.  tests/test_modelio.py asserts the shipped files stay in sync with
the builders.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qgcheck.linalg import LinMap
from qgcheck.modelio import emit_model, emit_morphism, emit_table
from qgcheck.models import GroupTable, build_function_algebra, builtin
from qgcheck.report import ensure
from qgcheck.subgroups import QGMorphism, validate_morphism

SHIPPED = ["trivial", "c_z2", "c_z3", "c_z4", "c_s3",
           "cg_z2", "cg_z3", "cg_s3", "d_z2", "d_z3",
           "sweedler", "taft3", "broken"]


def first_of_order(table, order):
    for i in range(1, table.n):
        p, o = i, 1
        while p != 0:
            p, o = table.mul(p, i), o + 1
        if o == order:
            return i
    raise ValueError(f"no element of order {order}")


def restriction_onto_cyclic(s3, order):
    """Restriction from c(s3) onto c(z<order>), target built from the
    cyclic table directly so the shipped morphism file pairs with the
    shipped c_z* model files."""
    source = build_function_algebra(s3)
    target = build_function_algebra(GroupTable.cyclic(order))
    gen = first_of_order(s3, order)
    old, power = [0], gen
    while power != 0:
        old.append(power)
        power = s3.mul(power, gen)
    one = source.scalar(1)
    pi = LinMap.from_entries(source.A, target.A,
                             [(new, g, one) for new, g in enumerate(old)])
    mor = QGMorphism(source, target, pi)
    ensure(validate_morphism(mor))
    return mor


def main():
    out = os.path.join(os.path.dirname(__file__), "..", "models")
    os.makedirs(out, exist_ok=True)
    for name in SHIPPED:
        emit_model(builtin(name), os.path.join(out, f"{name}.json"))
        print(f"models/{name}.json")
    s3 = GroupTable.symmetric(3)
    emit_morphism(restriction_onto_cyclic(s3, 3),
                  os.path.join(out, "restrict_a3.json"))
    print("models/restrict_a3.json")
    emit_morphism(restriction_onto_cyclic(s3, 2),
                  os.path.join(out, "restrict_z2.json"))
    print("models/restrict_z2.json")
    emit_table(s3, os.path.join(out, "s3_table.json"))
    print("models/s3_table.json")


if __name__ == "__main__":
    main()
