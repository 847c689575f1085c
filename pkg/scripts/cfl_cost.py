"""Time-step bound for a realistic 380 kV aerial line at several spatial resolutions."""
from telegrapher.network import LineParams, derived_constants

# per km
AERIAL = LineParams(R=0.028e-3, L=0.8e-3, G=15e-9, C=14e-9, length=100.0)


def main():
    lam = derived_constants(AERIAL).lam
    print(f"wave speed {lam:.1f} km/s")
    for dx in (10.0, 1.0, 0.1):
        dt = dx / lam
        print(f"dx = {dx:5.1f} km: dt <= {dt:.3e} s, {1 / dt:.3e} steps per simulated second")


if __name__ == "__main__":
    main()
