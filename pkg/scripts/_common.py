"""Tiny helper: expose a dataclass config as command-line flags."""
import argparse
import dataclasses


def parse_config(cls, description: str):
    ap = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        ap.add_argument("--" + f.name.replace("_", "-"), dest=f.name, type=type(f.default), default=f.default)
    return cls(**vars(ap.parse_args()))
