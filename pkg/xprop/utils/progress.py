"""
Progress Reporter

Step counter for long numerical loops (integration steps, propagation
steps, quadrature displacements), drawn as a single terminal line.
"""

import locale
import logging
import os
import sys
import time

logger = logging.getLogger(__name__)

BAR_WIDTH = 20
UNICODE_GLYPHS = ("█", "░")


def _mentions_utf(value):
    return "utf" in (value or "").lower()


def _terminal_supports_unicode(stream):
    try:
        if not _mentions_utf(getattr(stream, "encoding", None)):
            return False
        if not any(
            _mentions_utf(value)
            for value in (
                locale.getpreferredencoding(),
                os.environ.get("LANG"),
                os.environ.get("LC_CTYPE"),
            )
        ):
            return False
        return os.environ.get("TERM", "") != "dumb" and stream.isatty()
    except Exception:
        return False


def _format_rate(rate):
    if rate >= 1000:
        return f" {rate / 1000:.1f}k/s"
    return f" {rate:.0f}/s"


def _format_eta(seconds):
    minutes, rest = divmod(int(seconds), 60)
    return f" ETA {minutes}:{rest:02d}"


class ProgressReporter:
    """Counts completed steps and redraws every `every` steps and at the end"""

    def __init__(self, total_steps, label="", quiet=False, show_progress=True, every=10):
        self.total_steps = total_steps
        self.completed_steps = 0
        self.label = label
        self.every = max(1, int(every))
        self.show_progress = show_progress and not quiet and total_steps > 0
        self.start_time = time.time()
        self.unicode_support = _terminal_supports_unicode(sys.stdout)

    @property
    def done(self):
        return self.completed_steps >= self.total_steps

    def _calculate_stats(self):
        """Rate and ETA suffixes; empty during the first second"""
        elapsed = time.time() - self.start_time
        if elapsed < 1:
            return "", ""
        rate = self.completed_steps / elapsed
        eta = _format_eta((self.total_steps - self.completed_steps) / rate) if rate > 0 else ""
        return _format_rate(rate), eta

    def _bar(self, pct):
        filled = int(BAR_WIDTH * pct / 100)
        if self.unicode_support:
            full, empty = UNICODE_GLYPHS
            return full * filled + empty * (BAR_WIDTH - filled)
        head = ">" if 0 < filled < BAR_WIDTH else ""
        return ("=" * filled + head).ljust(BAR_WIDTH)

    def render(self):
        pct = int(100 * self.completed_steps / self.total_steps)
        rate, eta = self._calculate_stats()
        prefix = f"{self.label} " if self.label else ""
        return (
            f"{prefix}[{self._bar(pct)}] {pct:3d}% "
            f"{self.completed_steps:,}/{self.total_steps:,}{rate}{eta}"
        )

    def update(self, count=1):
        self.completed_steps = min(self.total_steps, self.completed_steps + count)
        if not self.show_progress:
            return
        if self.completed_steps % self.every and not self.done:
            return
        print(f"\r{self.render()}", end="\n" if self.done else "", flush=True)


class NullProgress:
    """Stand-in used by library calls made without a reporter"""

    def update(self, count=1):
        pass


def progress_or_null(progress):
    return NullProgress() if progress is None else progress
