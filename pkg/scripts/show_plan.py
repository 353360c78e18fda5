"""Dump the recursion wiring of one or more variants.

    python scripts/show_plan.py 1 4
"""
import sys

from amqft.variants import FunctionId, build_plan


def describe(v: int) -> str:
    plan = build_plan(v)
    lines = [f"variant {v} (M elaboration {plan.m_elab.value})"]
    for fn in sorted(plan.reachable(FunctionId.CDFT), key=lambda f: list(FunctionId).index(f)):
        w = plan.wiring[fn]
        steps = " -> ".join(e.value for e in w.elaborations)
        calls = ", ".join(
            "".join(f"{h.value} -> " for h in c.via) + f"{c.function.value}[N/{c.divisor}]"
            for c in w.calls
        )
        lines.append(f"  {fn.value:7s} (base N={plan.base_cases[fn]}): {steps} => {calls}")
    return "\n".join(lines)


if __name__ == "__main__":
    for arg in sys.argv[1:] or [str(v) for v in range(1, 9)]:
        print(describe(int(arg)))
