#!/usr/bin/env python3
# Copyright 2026 The EOS Scheduling Authors
# SPDX-License-Identifier: Apache-2.0
"""Bins urban agglomeration populations onto a 5-degree global grid.

Each agglomeration puts 70% of its population into its own cell and spreads
the remainder over the 8 neighbouring cells (longitude wraps). The output
lists every cell of the 36x72 grid with its normalized weight.
"""
import csv
import pathlib

CELL = 5.0
ROWS = int(180 / CELL)
COLS = int(360 / CELL)

here = pathlib.Path(__file__).resolve().parent
src = here / "data" / "urban_agglomerations.csv"
dst = here.parent / "core" / "data" / "population_grid_5deg.csv"

weights = [[0.0] * COLS for _ in range(ROWS)]
with src.open() as fh:
    for row in csv.DictReader(fh):
        lat, lon, pop = float(row["lat"]), float(row["lon"]), float(row["pop_millions"])
        r = min(int((lat + 90.0) // CELL), ROWS - 1)
        c = int(((lon + 180.0) % 360.0) // CELL)
        weights[r][c] += 0.7 * pop
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                if dr == 0 and dc == 0:
                    continue
                rr = min(max(r + dr, 0), ROWS - 1)
                weights[rr][(c + dc) % COLS] += 0.3 * pop / 8.0

total = sum(map(sum, weights))
with dst.open("w") as out:
    out.write("# 5-degree population weight grid; columns: center_lat,center_lon,weight\n")
    for r in range(ROWS):
        for c in range(COLS):
            lat = -90.0 + (r + 0.5) * CELL
            lon = -180.0 + (c + 0.5) * CELL
            out.write(f"{lat:.1f},{lon:.1f},{weights[r][c] / total:.9f}\n")
print(f"wrote {ROWS * COLS} cells to {dst}")
