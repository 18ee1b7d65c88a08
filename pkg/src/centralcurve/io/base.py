from abc import ABC, abstractmethod

from centralcurve.io.instance_file import InstanceFile


class InstanceSource(ABC):
    @property
    @abstractmethod
    def name(self) -> str:
        ...

    @abstractmethod
    def load(self) -> InstanceFile:
        ...
