"""Color Lie data -> deformation -> color Lie data for the Heisenberg example,
with and without a central omega, printing each stage.

    python3 scripts/heisenberg_roundtrip.py
"""
from pathlib import Path

from pbwdeform.colorlie import color_to_hq, hq_to_color, parse_color, serialize_color
from pbwdeform.pbw import METHODS, check_pbw
from pbwdeform.presentation import serialize_spec

FIXTURE = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "heisenberg.color"


def main() -> None:
    base = FIXTURE.read_text()
    for label, extra in [("omega = 0", ""), ("omega(v1, v3) = 1", "\n[omega]\n1 3 : 1\n")]:
        print(f"== {label}")
        d = parse_color(base + extra)
        spec = color_to_hq(d)
        print(serialize_spec(spec), end="")
        print("verdicts:", {m: check_pbw(spec, m).passed for m in METHODS})
        back = hq_to_color(spec)
        print(serialize_color(back), end="")
        print()


if __name__ == "__main__":
    main()
