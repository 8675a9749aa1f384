#!/usr/bin/env python3
"""Regenerates the trace fixtures under data/traces/ (deterministic)."""
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "traces"
HEADER = "t_ms,uplink_mbps,rtt_ms\n"


def write(name, rows):
    with open(OUT / name, "w") as f:
        f.write(HEADER)
        for t, up, rtt in rows:
            f.write(f"{t},{up:.2f},{rtt:.2f}\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    write("square_wave.csv",
          [(i * 100, 10.0 if i % 2 == 0 else 60.0, 12.0) for i in range(20)])
    write("step_down.csv",
          [(i * 100, 60.0 if i < 5 else 10.0, 12.0) for i in range(10)])
    write("constant.csv", [(i * 100, 200.0, 12.0) for i in range(10)])

    # Random walk inside a 5G-like envelope: uplink 100-200 Mbps, RTT ~12 ms.
    rng = random.Random(20240601)
    up, rtt, rows = 150.0, 12.0, []
    for i in range(600):
        up = min(200.0, max(100.0, up + rng.gauss(0.0, 8.0)))
        rtt = min(16.0, max(8.0, rtt + rng.gauss(0.0, 0.5)))
        rows.append((i * 100, up, rtt))
    write("drive_5g.csv", rows)


if __name__ == "__main__":
    main()
