"""Write eight 1024x1024 stand-in PGMs named after the bundled corpus manifest.

    python scripts/make_synthetic_corpus.py corpus/
"""

import argparse
from importlib import resources

from mammoenhance.batch import load_manifest
from mammoenhance.synthetic import write_corpus


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out_dir")
    parser.add_argument("--size", type=int, default=1024)
    args = parser.parse_args()
    text = resources.files("mammoenhance").joinpath("data/table1_manifest.csv").read_text()
    manifest = write_corpus(load_manifest(text), args.out_dir, size=args.size)
    print(f"wrote {manifest}")


if __name__ == "__main__":
    main()
