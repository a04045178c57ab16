"""Prompt construction for the two context conditions and the repair
agent interface, with deterministic offline mocks.

Templates are plain text files with {code}, {compiler_message},
{problem_statement} and {fewshot} placeholders; the shipped defaults
live in data/templates and can be overridden per experiment.
"""

from __future__ import annotations

import hashlib
import json
import re
import time
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Protocol

from . import CodemendError
from .compilecheck import CompilerDiagnostics
from .corpus import Problem, Submission


class ContextLevel(str, Enum):
    LOW = "low"
    HIGH = "high"


PART_CODE = "code"
PART_INSTRUCTIONS = "instructions"
PART_COMPILER_MESSAGE = "compiler_message"
PART_PROBLEM_STATEMENT = "problem_statement"
PART_FEWSHOT = "fewshot"

LOW_PARTS = frozenset({PART_CODE, PART_INSTRUCTIONS})
HIGH_PARTS = frozenset({
    PART_CODE, PART_INSTRUCTIONS, PART_COMPILER_MESSAGE,
    PART_PROBLEM_STATEMENT, PART_FEWSHOT,
})


class PromptError(CodemendError):
    pass


class TransportError(CodemendError):
    pass


@dataclass(frozen=True)
class Condition:
    agent_id: str
    context_level: ContextLevel

    @property
    def key(self) -> str:
        return f"{self.agent_id}::{self.context_level.value}"


@dataclass(frozen=True)
class PromptBundle:
    system_text: str
    user_text: str
    context_level: ContextLevel
    included_parts: frozenset[str]


class FailureKind(str, Enum):
    TRANSPORT = "transport"
    REFUSAL = "refusal"
    EMPTY = "empty"
    UNFENCED = "unfenced"


@dataclass(frozen=True)
class AgentReply:
    agent_id: str
    raw_reply: str
    latency_ms: int
    repaired_source: str | None = None
    failure: FailureKind | None = None


@dataclass(frozen=True)
class PromptTemplates:
    system: str
    low_user: str
    high_user: str

    @classmethod
    def load_default(cls) -> "PromptTemplates":
        base = resources.files("codemend.data.templates")
        return cls(
            system=(base / "system.txt").read_text(encoding="utf-8"),
            low_user=(base / "low_user.txt").read_text(encoding="utf-8"),
            high_user=(base / "high_user.txt").read_text(encoding="utf-8"),
        )

    @classmethod
    def from_paths(cls, system: str | Path, low_user: str | Path,
                   high_user: str | Path) -> "PromptTemplates":
        return cls(
            system=Path(system).read_text(encoding="utf-8"),
            low_user=Path(low_user).read_text(encoding="utf-8"),
            high_user=Path(high_user).read_text(encoding="utf-8"),
        )


def build_prompt(
    submission: Submission,
    problem: Problem | None = None,
    diag: CompilerDiagnostics | None = None,
    level: ContextLevel = ContextLevel.LOW,
    templates: PromptTemplates | None = None,
) -> PromptBundle:
    """Render the prompt for one repair request.

    Low context carries the student code and the repair instructions
    only. High context additionally requires the compiler message, the
    problem statement and at least one few-shot pair, appended in that
    fixed order.
    """
    templates = templates or PromptTemplates.load_default()
    level = ContextLevel(level)
    if level is ContextLevel.LOW:
        user = templates.low_user.replace("{code}", submission.source)
        return PromptBundle(
            system_text=templates.system,
            user_text=user,
            context_level=level,
            included_parts=LOW_PARTS,
        )

    missing = []
    if problem is None or not problem.statement.strip():
        missing.append("problem statement")
    if diag is None:
        missing.append("compiler message")
    if problem is None or not problem.fewshot_examples:
        missing.append("fewshot examples")
    if missing:
        raise PromptError(
            f"high context prompt is missing: {', '.join(missing)}")

    assert problem is not None and diag is not None
    user = (templates.high_user
            .replace("{code}", submission.source)
            .replace("{compiler_message}", diag.render_text())
            .replace("{problem_statement}", problem.statement)
            .replace("{fewshot}", _render_fewshot(problem)))
    return PromptBundle(
        system_text=templates.system,
        user_text=user,
        context_level=level,
        included_parts=HIGH_PARTS,
    )


def _render_fewshot(problem: Problem) -> str:
    blocks: list[str] = []
    for i, pair in enumerate(problem.fewshot_examples, start=1):
        if pair.label == "bad":
            head = (f"Example {i} (incorrect repair, do not imitate: "
                    "it rewrites the student's solution):")
        else:
            head = f"Example {i} (correct repair):"
        blocks.append(
            f"{head}\nBroken:\n```java\n{pair.broken}\n```\n"
            f"Repaired:\n```java\n{pair.repaired}\n```"
        )
    return "\n\n".join(blocks)


def prompt_hash(bundle: PromptBundle) -> str:
    digest = hashlib.sha256()
    digest.update(bundle.system_text.encode("utf-8"))
    digest.update(b"\x00")
    digest.update(bundle.user_text.encode("utf-8"))
    return digest.hexdigest()


# ---------------------------------------------------------------------------
# Reply parsing
# ---------------------------------------------------------------------------

_FENCE_TIGHT = re.compile(r"```[^\n]*\n(.*?)\n[ \t]*```", re.DOTALL)
_FENCE_LOOSE = re.compile(r"```[^\n]*\n(.*?)```", re.DOTALL)

_REFUSAL_MARKERS = (
    "i can't", "i cannot", "i won't", "i am unable", "i'm unable",
    "sorry", "cannot assist", "can't help",
)


def extract_code_block(reply: str) -> str | None:
    """Interior of the first fenced code block, or None."""
    m = _FENCE_TIGHT.search(reply)
    if m is None:
        m = _FENCE_LOOSE.search(reply)
    return m.group(1) if m else None


def _looks_like_refusal(reply: str) -> bool:
    head = reply.strip().lower()[:200]
    return any(marker in head for marker in _REFUSAL_MARKERS)


# ---------------------------------------------------------------------------
# Endpoints
# ---------------------------------------------------------------------------

class AgentEndpoint(Protocol):
    agent_id: str

    def send(self, system_text: str, user_text: str) -> str:
        """Return the raw model reply; raise TransportError on failure."""
        ...


@dataclass
class HttpEndpoint:
    """OpenAI-style chat completions endpoint.

    Credentials come from the environment variable named in the config;
    they are never persisted with results.
    """

    agent_id: str
    base_url: str
    model: str
    api_key_env: str | None = None
    temperature: float = 0.0
    timeout: float = 60.0

    def send(self, system_text: str, user_text: str) -> str:
        import os

        import httpx

        headers = {"Content-Type": "application/json"}
        if self.api_key_env:
            key = os.environ.get(self.api_key_env)
            if not key:
                raise TransportError(
                    f"environment variable {self.api_key_env} is not set")
            headers["Authorization"] = f"Bearer {key}"
        payload = {
            "model": self.model,
            "temperature": self.temperature,
            "messages": [
                {"role": "system", "content": system_text},
                {"role": "user", "content": user_text},
            ],
        }
        try:
            response = httpx.post(
                self.base_url.rstrip("/") + "/chat/completions",
                json=payload,
                headers=headers,
                timeout=self.timeout,
            )
        except httpx.HTTPError as exc:
            raise TransportError(f"request failed: {exc}") from exc
        if response.status_code != 200:
            raise TransportError(
                f"endpoint returned HTTP {response.status_code}")
        try:
            return response.json()["choices"][0]["message"]["content"]
        except (KeyError, IndexError, ValueError) as exc:
            raise TransportError(f"malformed endpoint response: {exc}") from exc


def _fenced(code: str) -> str:
    return f"```java\n{code}\n```"


@dataclass
class EchoEndpoint:
    agent_id: str = "mock-echo"

    def send(self, system_text: str, user_text: str) -> str:
        code = extract_code_block(user_text)
        if code is None:
            raise TransportError("echo mock found no code block in the prompt")
        return _fenced(code)


@dataclass
class RuleProxyEndpoint:
    agent_id: str = "mock-rules"

    def send(self, system_text: str, user_text: str) -> str:
        from .repair_rules import repair

        code = extract_code_block(user_text)
        if code is None:
            raise TransportError("rule proxy found no code block in the prompt")
        return _fenced(repair(code).repaired_source)


@dataclass
class ScriptedEndpoint:
    """Replays recorded replies keyed by prompt hash; unknown prompts
    fail like a dead connection."""

    table: dict[str, str] = field(default_factory=dict)
    agent_id: str = "mock-scripted"

    @classmethod
    def from_jsonl(cls, path: str | Path, agent_id: str = "mock-scripted") -> "ScriptedEndpoint":
        table: dict[str, str] = {}
        with Path(path).open("r", encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                obj = json.loads(line)
                table[obj["prompt_hash"]] = obj["reply"]
        return cls(table=table, agent_id=agent_id)

    def send(self, system_text: str, user_text: str) -> str:
        digest = hashlib.sha256()
        digest.update(system_text.encode("utf-8"))
        digest.update(b"\x00")
        digest.update(user_text.encode("utf-8"))
        key = digest.hexdigest()
        if key not in self.table:
            raise TransportError(f"no scripted reply for prompt {key[:12]}")
        return self.table[key]


def mock_agent(behavior: str, script: str | Path | dict | None = None,
               agent_id: str | None = None) -> AgentEndpoint:
    """Offline endpoints: echo, rule_proxy, or scripted replay."""
    if behavior == "echo":
        return EchoEndpoint(agent_id=agent_id or "mock-echo")
    if behavior == "rule_proxy":
        return RuleProxyEndpoint(agent_id=agent_id or "mock-rules")
    if behavior == "scripted":
        if isinstance(script, dict):
            return ScriptedEndpoint(table=dict(script),
                                    agent_id=agent_id or "mock-scripted")
        if script is None:
            raise PromptError("scripted mock needs a replay table or file")
        return ScriptedEndpoint.from_jsonl(script, agent_id=agent_id or "mock-scripted")
    raise PromptError(f"unknown mock behavior {behavior!r}")


def run_agent(
    bundle: PromptBundle,
    endpoint: AgentEndpoint,
    max_retries: int = 2,
    backoff_s: float = 0.25,
) -> AgentReply:
    """Send the prompt, retrying transport failures with exponential
    backoff, and extract the first fenced block as the repaired source."""
    start = time.perf_counter()
    reply: str | None = None
    for attempt in range(max_retries + 1):
        try:
            reply = endpoint.send(bundle.system_text, bundle.user_text)
            break
        except TransportError:
            if attempt == max_retries:
                latency = int((time.perf_counter() - start) * 1000)
                return AgentReply(agent_id=endpoint.agent_id, raw_reply="",
                                  latency_ms=latency,
                                  failure=FailureKind.TRANSPORT)
            time.sleep(backoff_s * (2 ** attempt))
    latency = int((time.perf_counter() - start) * 1000)
    assert reply is not None
    if not reply.strip():
        return AgentReply(agent_id=endpoint.agent_id, raw_reply=reply,
                          latency_ms=latency, failure=FailureKind.EMPTY)
    code = extract_code_block(reply)
    if code is None:
        kind = FailureKind.REFUSAL if _looks_like_refusal(reply) else FailureKind.UNFENCED
        return AgentReply(agent_id=endpoint.agent_id, raw_reply=reply,
                          latency_ms=latency, failure=kind)
    return AgentReply(agent_id=endpoint.agent_id, raw_reply=reply,
                      latency_ms=latency, repaired_source=code)
