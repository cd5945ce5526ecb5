#!/usr/bin/env python3
"""Regenerate the bundled fixture text files from the fixture builders."""

from pathlib import Path

from stratmorse import fixtures as fx
from stratmorse import formats

OUT = Path(__file__).resolve().parent.parent / "src" / "stratmorse" / "fixtures"


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    files = {
        "fig-tilted-torus.flow.txt": formats.write_flow(fx.tilted_torus_flow()),
        "fig-two-maxima-sphere.flow.txt":
            formats.write_flow(fx.sphere_two_maxima_flow()),
        "height-sphere.flow.txt": formats.write_flow(fx.height_sphere_flow()),
        "genus2-deficient.flow.txt":
            formats.write_flow(fx.genus2_deficient_flow()),
        "corrupted-d2.flow.txt": formats.write_flow(fx.corrupted_flow()),
        "disk-strata-poset.txt": formats.write_poset(fx.disk_strata_poset()),
        "tilted-torus-disk-poset.txt":
            formats.write_poset(fx.tilted_torus_disk_posets().poset),
    }

    disk = fx.disk_complex()
    files["disk-corner-strata.complex.txt"] = formats.write_complex(
        disk, fx.disk_stratification_corners(disk))
    files["disk-cell-strata.complex.txt"] = formats.write_complex(
        disk, fx.disk_stratification_cells(disk))
    files["disk.chain.txt"] = formats.write_chain(fx.disk_chain(disk))

    sphere, strat = fx.sphere_cw_complex()
    files["sphere-cw.complex.txt"] = formats.write_complex(sphere, strat)
    files["sphere-fundamental.chain.txt"] = formats.write_chain(
        fx.sphere_fundamental_cycle(sphere))

    torus = fx.torus_complex()
    files["torus.complex.txt"] = formats.write_complex(
        torus, fx.torus_skeleton_stratification(torus))
    files["torus-fundamental.chain.txt"] = formats.write_chain(
        fx.torus_fundamental_cycle(torus))

    for name, text in sorted(files.items()):
        (OUT / name).write_text(text, encoding="utf-8")
        print(f"wrote {OUT / name}")


if __name__ == "__main__":
    main()
