#!/usr/bin/env python3
"""Regenerates the bundled demo series (demand.csv, weather.csv, valves.csv).

The files are committed; rerun this only when the demo scenario changes.
Scenario: 21 days of 10-minute data for a small multi-family house with a
night setback (22:00-06:00), a mild late-winter weather pattern, and a
three-day valve log in which the bedroom radiator runs saturated.
"""
import math
import random
from datetime import datetime, timedelta, timezone

START = datetime(2021, 2, 1, tzinfo=timezone.utc)
DAYS = 21
STEP = timedelta(minutes=10)
PER_DAY = 144

rng = random.Random(7)


def t_out(i: int) -> float:
    day = i / PER_DAY
    daily = 4.0 * math.sin(2 * math.pi * ((i % PER_DAY) / PER_DAY - 0.3125))
    seasonal = 3.0 * math.sin(2 * math.pi * day / DAYS)
    return round(3.0 + daily + seasonal + rng.uniform(-0.3, 0.3), 2)


def is_night(i: int) -> bool:
    interval = i % PER_DAY
    return interval < 36 or interval >= 132  # 00:00-06:00, 22:00-24:00


def stamp(i: int) -> str:
    return (START + i * STEP).strftime("%Y-%m-%dT%H:%M:%SZ")


weather = []
demand = []
for i in range(DAYS * PER_DAY):
    T = t_out(i)
    weather.append((stamp(i), T))
    # meter outage: two hours on day 5
    if 5 * PER_DAY + 60 <= i < 5 * PER_DAY + 72:
        continue
    regime = 0.55 if is_night(i) else 1.0
    q = max(0.0, 0.16 * (20.0 - T)) * regime * rng.uniform(0.96, 1.04)
    demand.append((stamp(i), round(q, 3)))

with open("weather.csv", "w") as f:
    f.write("timestamp,value\n")
    f.writelines(f"{ts},{v}\n" for ts, v in weather)

with open("demand.csv", "w") as f:
    f.write("timestamp,value\n")
    f.writelines(f"{ts},{v}\n" for ts, v in demand)

# hourly valve log over the three-day experiment window (days 8-10)
heaters = {
    "h_living_1": (42.0, 8.0),
    "h_living_2": (48.0, 8.0),
    "h_bed": (99.6, 0.4),  # undersized radiator pinned open
    "h_bath": (34.0, 6.0),
    "h_hall": (36.0, 5.0),
}
with open("valves.csv", "w") as f:
    f.write("timestamp,heater_id,opening_pct\n")
    for i in range(8 * PER_DAY, 11 * PER_DAY, 6):
        for hid, (center, spread) in heaters.items():
            pct = min(100.0, max(0.0, rng.gauss(center, spread / 3)))
            f.write(f"{stamp(i)},{hid},{round(pct, 1)}\n")
print("wrote weather.csv demand.csv valves.csv")
