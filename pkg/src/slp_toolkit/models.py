from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from slp_toolkit.errors import ContractViolation

RecipeKind = Literal["fibonacci", "power", "balanced", "repair", "random"]

BENCH_HEADER = "recipe,n,N,sigma,flavor,op,p50_ns,p99_ns,engine_queries_per_op"


class Occurrence(BaseModel):
    """A minimal occurrence ``S[start..end]`` (1-indexed, inclusive)."""

    model_config = ConfigDict(frozen=True)

    start: int = Field(ge=1, description="Position of the first pattern symbol")
    end: int = Field(ge=1, description="Position of the last pattern symbol")

    def str_line(self) -> str:
        return f"{self.start} {self.end}"


class SlpStats(BaseModel):
    """Summary printed by the ``stats`` command."""

    n: int = Field(description="Number of rules")
    N: int = Field(description="Length of the derived string")
    sigma: int = Field(description="Alphabet size")
    height: int = Field(description="Nodes on the longest root-to-terminal path")
    light_edge_max: int = Field(description="Most light edges on any root-to-terminal path")
    heavy_trees: int = Field(description="Trees in the heavy forest")
    unreachable: int = Field(default=0, description="Rules not reachable from the root")

    def str_lines(self) -> list[str]:
        return [f"{name}={value}" for name, value in self.model_dump().items()]


class GrammarRecipe(BaseModel):
    """A synthetic grammar family with its parameters, e.g. ``fibonacci:k=30``."""

    kind: RecipeKind
    k: Optional[int] = Field(default=None, description="fibonacci index or power exponent")
    symbol: str = Field(default="a", description="Repeated symbol for power")
    length: Optional[int] = Field(default=None, description="Text length for balanced/repair")
    n: Optional[int] = Field(default=None, description="Rule count for random")
    sigma: int = Field(default=2, description="Alphabet size for balanced/repair/random")
    seed: int = Field(default=0, description="Random seed")

    @model_validator(mode="after")
    def _check_kind(self) -> "GrammarRecipe":
        if self.kind == "fibonacci" and (self.k is None or self.k < 2):
            raise ValueError("fibonacci needs k >= 2")
        if self.kind == "power":
            if self.k is None or self.k < 0:
                raise ValueError("power needs k >= 0")
            if len(self.symbol) != 1:
                raise ValueError("power symbol must be a single character")
        if self.kind in ("balanced", "repair", "random") and not 1 <= self.sigma <= 256:
            raise ValueError("sigma must be in 1..256")
        if self.kind in ("balanced", "repair") and (self.length is None or self.length < 1):
            raise ValueError(f"{self.kind} needs length >= 1")
        if self.kind == "random" and (self.n is None or self.n < self.sigma):
            raise ValueError("random needs n >= sigma >= 1")
        return self

    @classmethod
    def parse(cls, text: str) -> "GrammarRecipe":
        """Read ``kind:key=value,key=value``."""
        kind, _, rest = text.partition(":")
        values: dict[str, str] = {"kind": kind.strip()}
        for item in filter(None, (p.strip() for p in rest.split(","))):
            key, eq, value = item.partition("=")
            if not eq:
                raise ContractViolation(f"recipe parameter {item!r} is not key=value")
            values[key.strip()] = value.strip()
        try:
            return cls.model_validate(values)
        except ValueError as e:
            raise ContractViolation(f"invalid recipe {text!r}: {e}") from e

    def __str__(self) -> str:
        keys = {
            "fibonacci": ("k",),
            "power": ("k", "symbol"),
            "balanced": ("length", "sigma", "seed"),
            "repair": ("length", "sigma", "seed"),
            "random": ("n", "sigma", "seed"),
        }[self.kind]
        return f"{self.kind}:" + ",".join(f"{key}={getattr(self, key)}" for key in keys)


class BenchRecord(BaseModel):
    """One CSV row of ``bench`` output."""

    recipe: str
    n: int
    N: int
    sigma: int
    flavor: str
    op: str
    p50_ns: int
    p99_ns: int
    engine_queries_per_op: float

    def csv_row(self) -> str:
        return (
            f"{self.recipe.replace(',', ';')},{self.n},{self.N},{self.sigma},{self.flavor},{self.op},"
            f"{self.p50_ns},{self.p99_ns},{self.engine_queries_per_op:.2f}"
        )


class SuiteResult(BaseModel):
    """Outcome of one ``selftest`` suite."""

    name: str
    cases: int = 0
    failures: int = 0
    details: list[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def fail(self, detail: str) -> None:
        self.failures += 1
        if len(self.details) < 5:
            self.details.append(detail)

    def str_line(self) -> str:
        mark = "✅" if self.ok else "❌"
        return f"{mark} {self.name}: {self.cases - self.failures}/{self.cases} passed"
