import sys

from fracwaves.analysis import purely_imaginary_orders


def cmd_orders(m_max: int) -> int:
    """Lists the orders alpha = 1 / (2 (m + 1)) whose velocities are purely imaginary."""
    try:
        orders = purely_imaginary_orders(m_max)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{'m':<4} alpha")
    for m, alpha in enumerate(orders):
        print(f"{m:<4} {alpha:.17g}")
    return 0


if __name__ == "__main__":
    from fracwaves.cli import main

    sys.exit(main(["orders", *sys.argv[1:]]))
