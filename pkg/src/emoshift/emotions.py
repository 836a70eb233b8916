"""The six target emotion categories and their canonical ordering.

Every per-emotion vector in the library (classifier activations, lexicon
hit counts, centroid maps) follows the order of ``EMOTIONS``.
"""

EMOTIONS = ("anger", "disgust", "fear", "joy", "sadness", "surprise")

EMOTION_INDEX = {name: i for i, name in enumerate(EMOTIONS)}

# Short labels used in report tables.
EMOTION_ABBREV = {
    "anger": "A",
    "disgust": "D",
    "fear": "F",
    "joy": "J",
    "sadness": "Sa",
    "surprise": "Su",
}


def check_emotion(name: str) -> str:
    """Validate an emotion label, returning it unchanged."""
    if name not in EMOTION_INDEX:
        raise ValueError(
            f"unknown emotion {name!r}; expected one of {', '.join(EMOTIONS)}"
        )
    return name
