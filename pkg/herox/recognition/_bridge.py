import json
import logging
import os
import queue
import shutil
import subprocess
import tempfile
import threading
from typing import ClassVar, Optional, Sequence

from ..image import RasterImage, write_png
from ._base import ClassifierError, HeroClassifier, Prediction


logger = logging.getLogger(__name__)

DEFAULT_TIMEOUT = 30.0


def _pump(stream, lines: queue.Queue):
    for line in stream:
        lines.put(line)
    lines.put("")


class SubprocessClassifier(HeroClassifier):
    """Classifier served by an external process over line-delimited JSON.

    The child reads one request per line on stdin,
    `{"image_path": "<png path>", "roi_type": "<type>"}`, and answers with
    one line on stdout, either `{"labels": [...], "confidences": [...]}` or
    `{"error": "<message>"}`. The child is started lazily and kept alive
    between calls; calls are serialised. A child that does not answer
    within `timeout` seconds is killed and restarted on the next call.

    Attributes:
        command (Tuple[str, ...]): Program and arguments of the child.
        roi_type (str): Crop type sent with every request.
        timeout (float): Seconds to wait for each reply.
    """

    thread_safe: ClassVar[bool] = False

    command: tuple
    roi_type: str
    timeout: float
    _state: dict
    _lock: object

    def __init__(
        self,
        command: Sequence[str],
        roi_type: str = "appearance",
        timeout: float = DEFAULT_TIMEOUT,
    ):
        super().__init__(name="SubprocessClassifier")
        if len(command) == 0:
            raise ValueError("command must not be empty")
        if timeout <= 0:
            raise ValueError(f"timeout must be positive, got {timeout}")
        self.command = tuple(command)
        self.roi_type = str(roi_type)
        self.timeout = float(timeout)
        self._state = {"process": None, "lines": None, "workdir": None}
        self._lock = threading.Lock()

    def _process(self) -> subprocess.Popen:
        proc = self._state["process"]
        if proc is not None and proc.poll() is None:
            return proc
        if proc is not None:
            logger.warning("classifier process exited with %s, restarting", proc.returncode)
        try:
            proc = subprocess.Popen(
                list(self.command),
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                bufsize=1,
            )
        except OSError as e:
            raise ClassifierError(f"cannot start {self.command[0]}: {e}") from e
        lines = queue.Queue()
        threading.Thread(target=_pump, args=(proc.stdout, lines), daemon=True).start()
        self._state["process"] = proc
        self._state["lines"] = lines
        if self._state["workdir"] is None:
            self._state["workdir"] = tempfile.mkdtemp(prefix="herox-bridge-")
        logger.info("started classifier process %s (pid %d)", self.command[0], proc.pid)
        return proc

    def _predict(self, image: RasterImage) -> Prediction:
        with self._lock:
            proc = self._process()
            path = os.path.join(self._state["workdir"], "crop.png")
            write_png(image, path)
            request = json.dumps({"image_path": path, "roi_type": self.roi_type})
            try:
                proc.stdin.write(request + "\n")
                proc.stdin.flush()
            except (BrokenPipeError, OSError) as e:
                raise ClassifierError(f"classifier process failed: {e}") from e
            try:
                line = self._state["lines"].get(timeout=self.timeout)
            except queue.Empty:
                proc.kill()
                proc.wait()
                raise ClassifierError(
                    f"classifier process gave no reply within {self.timeout:g} s"
                ) from None
        if not line:
            raise ClassifierError("classifier process closed its output")
        try:
            reply = json.loads(line)
        except json.JSONDecodeError as e:
            raise ClassifierError(f"malformed classifier reply: {line.strip()!r}") from e
        if "error" in reply:
            raise ClassifierError(f"classifier error: {reply['error']}")
        try:
            labels, confidences = reply["labels"], reply["confidences"]
            if len(labels) != len(confidences):
                raise ValueError("labels and confidences differ in length")
            return tuple((str(lb), float(c)) for lb, c in zip(labels, confidences))
        except (KeyError, TypeError, ValueError) as e:
            raise ClassifierError(f"malformed classifier reply: {line.strip()!r}") from e

    @property
    def workdir(self) -> Optional[str]:
        """Directory holding the crop handed to the child, None before the first call."""
        return self._state["workdir"]

    def close(self, timeout: Optional[float] = 5.0) -> None:
        """Stop the child process and remove the crop directory."""
        with self._lock:
            proc = self._state["process"]
            workdir = self._state["workdir"]
            self._state.update(process=None, lines=None, workdir=None)
        if workdir is not None:
            shutil.rmtree(workdir, ignore_errors=True)
        if proc is None:
            return
        if proc.stdin:
            proc.stdin.close()
        try:
            proc.wait(timeout=timeout)
        except subprocess.TimeoutExpired:
            proc.kill()
            proc.wait()

    def __repr__(self):
        return f"SubprocessClassifier(command={list(self.command)!r}, roi_type={self.roi_type!r})"
