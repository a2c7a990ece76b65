"""Discrete-time play: strategies vs scripted, random, or live opponents."""

from .counterbehavior import (
    Counterbehavior,
    enumerate_counterbehaviors,
    parse_counterbehavior,
)
from .runtime import (
    DEFAULT_GRACE,
    DEFAULT_TICK_CAP,
    Environment,
    RandomEnvironment,
    ScriptedEnvironment,
    Transcript,
    play,
)
from .server import SessionApi, serve
from .session import Session, SessionError, SessionStore

__all__ = [
    "Counterbehavior",
    "DEFAULT_GRACE",
    "DEFAULT_TICK_CAP",
    "Environment",
    "RandomEnvironment",
    "ScriptedEnvironment",
    "Session",
    "SessionApi",
    "SessionError",
    "SessionStore",
    "Transcript",
    "enumerate_counterbehaviors",
    "parse_counterbehavior",
    "play",
    "serve",
]
