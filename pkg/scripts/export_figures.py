"""Write the bundled figure data (diagrams, systems, manifest) into the package."""
import argparse
import json
from pathlib import Path

from nilhecke import diagmod

DEFAULT_DIR = Path(__file__).resolve().parents[1] / "src" / "nilhecke" / "figures"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DEFAULT_DIR)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    manifest = {
        "figures": [diagmod.export_figure(f, args.out) for f in diagmod.figure_definitions()],
        "as_drawn": [diagmod.export_figure(f, args.out) for f in diagmod.drawn_transcriptions()],
    }
    (args.out / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")
    for entry in manifest["figures"] + manifest["as_drawn"]:
        print(f"{entry['id']:20s} {entry['module']:28s} {entry['system']}")


if __name__ == "__main__":
    main()
