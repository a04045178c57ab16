"""HTTP annotation service: task queue, SP/LP capture, kappa gating."""

from .app import create_app
from .store import AnnotationStore, Rounds, resolve_labels

__all__ = ["create_app", "AnnotationStore", "Rounds", "resolve_labels"]
