import datetime as dt
import os

from satsync import __version__
from satsync.util import save_json


def utc_tag():
    return dt.datetime.now(dt.timezone.utc).strftime("%Y%m%dT%H%M%SZ")


class RunManifest:
    """
    Record of a completed run: the resolved config, certificate summary, metrics and output
    paths. It is written last, so its presence marks the run as complete.
    """

    def __init__(
        self,
        command,
        config,
        certificate=None,
        metrics=None,
        outputs=None,
        duration=None,
    ):
        self.command = command
        self.config = config
        self.certificate = certificate
        self.metrics = metrics
        self.outputs = outputs or {}
        self.duration = duration
        self.version = __version__
        self.utc = utc_tag()

    def to_dict(self):
        return {
            "command": self.command,
            "version": self.version,
            "utc": self.utc,
            "duration": self.duration,
            "config": self.config,
            "certificate": self.certificate,
            "metrics": self.metrics,
            "outputs": self.outputs,
        }

    def save(self, out_dir):
        path = os.path.join(out_dir, "manifest.json")
        save_json(self.to_dict(), path)
        return path
