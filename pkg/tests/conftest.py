import gc
import sys

import jax
import psutil
import pytest

from herox.camp import Camp
from herox.matching import blood_bar_template
from herox.synth import BarSpec, HudSpec, render, SceneSpec


# JAX keeps every compiled kernel around; the match and Hough kernels are
# compiled once per frame size, which adds up over the suite.
@pytest.fixture(autouse=True)
def clear_caches():
    process = psutil.Process()
    if process.memory_info().vms > 4 * 2**30:  # >4GB memory usage
        jax.clear_caches()
        for module_name, module in sys.modules.copy().items():
            if module_name.startswith("jax"):
                if module_name not in ["jax.interpreters.partial_eval"]:
                    for obj_name in dir(module):
                        obj = getattr(module, obj_name)
                        if hasattr(obj, "cache_clear"):
                            try:
                                obj.cache_clear()
                            except Exception:
                                pass
        gc.collect()


@pytest.fixture(scope="session")
def template():
    return blood_bar_template()


@pytest.fixture(scope="session")
def three_bar_scene():
    """A 1280x720 frame with one bar of each camp and the skill wheel."""
    spec = SceneSpec(
        width=1280,
        height=720,
        bars=(
            BarSpec(x=607, y=260, camp=Camp.SELF, fill=0.9, level=4),
            BarSpec(x=150, y=80, camp=Camp.FRIEND, fill=0.6, level=7),
            BarSpec(x=420, y=520, camp=Camp.ENEMY, fill=0.35, level=12),
        ),
        background="noise",
        hud=HudSpec(label="hero03"),
        seed=7,
    )
    return render(spec)
