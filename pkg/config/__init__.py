# Config package
from .settings import FreudenthalConfig
