# Copyright 2026 The objblur Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerate tests/fixtures/natural from the scikit-image sample images.

Each source is center-cropped to a square (or a named crop), area-resized to
128x128 and stored as 8-bit RGB PNG.
"""
import os
import sys

import numpy as np
from PIL import Image
from skimage import data as skdata

CROPS = [
    ("astronaut", None), ("brick", None), ("camera", None), ("cell", None),
    ("chelsea", None), ("clock_motion", None), ("coffee", None), ("coins", None),
    ("grass", None), ("gravel", None), ("hubble_deep_field", None), ("ihc", None),
    ("moon", None), ("motorcycle_left", None), ("motorcycle_right", (0, 0, 500, 500)),
    ("retina", None), ("rocket", None), ("page", None),
    ("astronaut", (100, 0, 356, 256)), ("coffee", (0, 100, 300, 400)),
]


def load(name):
    base = os.path.join(os.path.dirname(skdata.__file__), name)
    for ext in (".png", ".jpg"):
        if os.path.exists(base + ext):
            return Image.open(base + ext).convert("RGB")
    raise FileNotFoundError(name)


def main(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    for i, (name, box) in enumerate(CROPS):
        img = load(name)
        if box is None:
            w, h = img.size
            s = min(w, h)
            box = ((w - s) // 2, (h - s) // 2, (w - s) // 2 + s, (h - s) // 2 + s)
        img = img.crop(box).resize((128, 128), Image.BOX)
        arr = np.asarray(img, dtype=np.uint8)
        Image.fromarray(arr).save(os.path.join(out_dir, f"{i:02d}_{name}.png"))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures/natural")
