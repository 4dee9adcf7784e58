#!/usr/bin/env python3
"""Generate the bundled 24-court synthetic fixture.

Sanctioned and working strengths are the published 2020 values for the
24 high courts. Pendency series are synthetic: exact integer lines over
229 sampled dates, with noisy early updates for the courts analysed on the
recent window and noisy series for the two courts that use overrides.
"""
import datetime as dt
import json
import pathlib
import random
import sys

OUT = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "data/synthetic24")

START = dt.date(2017, 8, 31)
END = dt.date(2020, 3, 22)
RECENT = dt.date(2019, 10, 1)
LATE_JOIN = dt.date(2018, 6, 1)

# court_id, name, sanctioned, working, load_ratio, slope/day, disposal/judge/day, window, joined_late
COURTS = [
    ("ALD", "Allahabad", 160, 102, 7100, 140, 4.5, "full", True),
    ("BOM", "Bombay", 94, 69, 3900, 0, 5.2, "override", False),
    ("CAL", "Calcutta", 72, 39, 5400, 0, 4.1, "override", False),
    ("CHH", "Chhattisgarh", 22, 15, 4300, 12, 5.0, "full", False),
    ("DEL", "Delhi", 60, 37, 2100, 25, 6.4, "full", False),
    ("GAU", "Gauhati", 24, 19, 2400, 4, 4.4, "full", True),
    ("GUJ", "Gujarat", 52, 28, 4100, 35, 6.1, "full", False),
    ("HP", "Himachal Pradesh", 13, 9, 4200, 9, 7.3, "full", False),
    ("JHA", "Jharkhand", 25, 19, 4400, -3, 3.3, "recent", False),
    ("JK", "Jammu and Kashmir", 17, 9, 6900, 11, 3.9, "recent", True),
    ("KAR", "Karnataka", 62, 33, 7600, 60, 5.8, "full", False),
    ("KER", "Kerala", 47, 34, 5800, 30, 7.9, "full", False),
    ("MAD", "Madras", 75, 58, 9600, 70, 8.6, "full", False),
    ("MAN", "Manipur", 5, 4, 1100, 1, 2.2, "recent", False),
    ("MEG", "Meghalaya", 4, 2, 480, 1, 3.1, "full", False),
    ("MP", "Madhya Pradesh", 53, 33, 9900, 55, 8.8, "full", True),
    ("ORI", "Orissa", 27, 14, 11200, 20, 6.6, "recent", False),
    ("PAT", "Patna", 53, 29, 5600, 30, 5.5, "full", False),
    ("PH", "Punjab and Haryana", 85, 52, 8100, 203, 5.0, "full", False),
    ("RAJ", "Rajasthan", 50, 25, 19374, 65, 6.9, "full", False),
    ("SIK", "Sikkim", 3, 3, 78, -1, 1.5, "recent", False),
    ("TA", "Telangana and Andhra", 61, 27, 12100, 48, 6.5, "full", False),
    ("TRI", "Tripura", 4, 3, 900, -2, 5.2, "recent", False),
    ("UK", "Uttarakhand", 11, 9, 3500, 4, 3.8, "recent", False),
]

OVERRIDES = [
    {"court_id": "BOM", "p0_override": 269100, "daily_rate_override": 38.5,
     "reason": "portal updates unreliable", "source": "supreme court annual report"},
    {"court_id": "CAL", "p0_override": 210600, "daily_rate_override": 27.0,
     "reason": "portal updates unreliable", "source": "court website"},
]


def main():
    rng = random.Random(20200322)
    span = (END - START).days
    offsets = sorted(rng.sample(range(1, span), 227))
    dates = [START] + [START + dt.timedelta(days=o) for o in offsets] + [END]
    assert len(dates) == 229

    rows = []
    for cid, _name, _s, working, ratio, slope, d_daily, window, late in COURTS:
        p_last = ratio * working
        disposed = round(d_daily * 30 * working)
        filed = max(0, disposed + slope * 30)
        noise_level = max(50, p_last // 40)
        walk = p_last
        for date in dates:
            if late and date < LATE_JOIN:
                continue
            back = (END - date).days
            if window == "override" or (window == "recent" and date < RECENT):
                walk = max(0, walk + rng.randint(-noise_level, noise_level))
                total = walk if window == "override" else max(0, p_last - slope * back + rng.randint(-3 * noise_level, 3 * noise_level))
            else:
                total = p_last - slope * back
            assert total >= 0, (cid, date, total)
            civil = total * 45 // 100
            criminal = total * 25 // 100
            writ = total - civil - criminal
            rows.append((date.isoformat(), cid, civil, criminal, writ, total, filed, disposed))

    rows.sort(key=lambda r: (r[1], r[0]))
    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "snapshots.csv", "w") as f:
        f.write("date,court_id,pending_civil,pending_criminal,pending_writ,pending_total,filed_monthly,disposed_monthly\n")
        for r in rows:
            f.write(",".join(str(v) for v in r) + "\n")
    with open(OUT / "strength.csv", "w") as f:
        f.write("court_id,name,sanctioned,working_avg\n")
        for cid, name, s, w, *_ in COURTS:
            f.write(f"{cid},{name},{s},{w}\n")
    windows = {cid: ({"since": RECENT.isoformat()} if window == "recent" else "full")
               for cid, *_rest, window, _late in COURTS}
    with open(OUT / "windows.json", "w") as f:
        json.dump(windows, f, indent=2, sort_keys=True)
        f.write("\n")
    with open(OUT / "overrides.json", "w") as f:
        json.dump(OVERRIDES, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
