"""Bundled example datasets."""

from __future__ import annotations

from importlib import resources

from .dataio import Dataset, load_dataset

#: names accepted by the CLI --data flags in place of a file path
BUNDLED = ("eu27",)


def bundled_path(name: str) -> str:
    """Filesystem path of a bundled dataset's CSV."""
    if name not in BUNDLED:
        raise KeyError(f"no bundled dataset named {name!r}")
    return str(resources.files("depthkit.data").joinpath(f"{name}.csv"))


def eu27() -> Dataset:
    """Government debt (% of GDP) and unemployment rate (%) for the 27 EU
    member states of 2011; points (debt, unemployment) labelled by country."""
    return load_dataset(bundled_path("eu27"))
