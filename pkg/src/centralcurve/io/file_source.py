from pathlib import Path

from centralcurve.io.base import InstanceSource
from centralcurve.io.instance_file import InstanceFile


class FileSource(InstanceSource):
    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)

    @property
    def name(self) -> str:
        return self.path.stem

    def load(self) -> InstanceFile:
        return InstanceFile.load(self.path)
