"""Inter-carrier interference weights: continuous-time vs sampled.

With carriers compressed below orthogonal spacing (alpha < 1), each carrier
leaks into its neighbours. This prints the leakage weight from a unit symbol on
carrier n into the matched filter of carrier m, for the analogue waveform and
for the M-sample implementation, showing how the sampled weight is slightly
magnified and converges to the analogue one as M grows.
"""

from sefdm import interference_continuous, interference_discrete


def main():
    alpha = 5 / 6
    print(f"alpha = 5/6, leakage from carrier n into carrier m (delta = n - m)\n")
    print(f"{'delta':>5} {'|continuous|':>14} " + " ".join(f"{'|M=' + str(m) + '|':>12}" for m in (16, 64, 256, 4096)))
    for delta in range(1, 6):
        cont = abs(interference_continuous(delta, 0, alpha))
        row = [abs(interference_discrete(delta, 0, alpha, m)) for m in (16, 64, 256, 4096)]
        print(f"{delta:>5} {cont:>14.6f} " + " ".join(f"{v:>12.6f}" for v in row))
    print("\nat alpha = 1 the weights vanish (orthogonal spacing):",
          abs(interference_continuous(1, 0, 1.0)))


if __name__ == "__main__":
    main()
