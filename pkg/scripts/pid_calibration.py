"""Step-response metrics of the two PID designs, plus sensitivity to the time step and derivative filter."""

import argparse

from eaglestrat.controlsim import EAGLE_PID, THIRD_ORDER_PLANT, ZIEGLER_NICHOLS_PID, closed_loop_step, response_metrics

DESIGNS = {"ziegler-nichols": ZIEGLER_NICHOLS_PID, "eagle": EAGLE_PID}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--csv-dir", help="write each nominal response as <design>.csv here")
    args = ap.parse_args()
    print(f"{'design':16s} {'dt':>8s} {'N':>6s} {'rise':>8s} {'settle':>8s} {'overshoot%':>10s}")
    for name, pid in DESIGNS.items():
        for dt, n in ((1e-3, None), (5e-4, None), (1e-3, 100.0), (1e-3, 20.0)):
            resp = closed_loop_step(THIRD_ORDER_PLANT, pid, dt=dt, n_filter=n)
            m = response_metrics(resp)
            print(f"{name:16s} {dt:8.0e} {str(n or '-'):>6s} {m.rise_time:8.4f} {m.settling_time:8.4f} {m.overshoot:10.4f}")
            if args.csv_dir and dt == 1e-3 and n is None:
                resp.to_csv(f"{args.csv_dir}/{name}.csv")


if __name__ == "__main__":
    main()
