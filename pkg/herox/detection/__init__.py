from ._detect import calibrate_threshold, detect_frame, Detection, Detector, FrameDetections


__all__ = [
    "calibrate_threshold",
    "detect_frame",
    "Detection",
    "Detector",
    "FrameDetections",
]
