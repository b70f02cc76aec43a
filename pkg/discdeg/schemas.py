"""
Pydantic schemas for discdeg reports and requests.

Defines the exact structure of a degree report and of the CLI requests.
Every integer is serialized as a decimal string since degrees grow like
d^{c+N} and quickly outgrow 64-bit consumers.
"""
import os
from typing import Annotated, List, Literal, Optional

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, field_serializer, model_validator
from sympy import isprime

from discdeg.errors import DomainError
from discdeg.polytope import MAX_CHARACTERISTIC, Profile

Verdict = Literal['irreducible', 'square_of_irreducible', 'unit']


class DegreeReport(BaseModel):
    """Homogeneity degrees of the discriminant of one profile."""
    model_config = ConfigDict(frozen=True)

    N: Annotated[int, Field(ge=0, description="Dimension of the ambient projective space.")]
    degrees: List[Annotated[int, Field(ge=1)]] = Field(
        description="Degrees d_1..d_c of the equations."
    )
    p: Annotated[int, Field(ge=0, description="Characteristic of the base field (0 or a prime).")]
    mu: Literal[1, 2] = Field(
        description="Degree of the contact map: 2 exactly when p = 2 and N - c is even."
    )
    defective: bool = Field(
        description="True when the discriminant locus has codimension > 1, so Delta = 1."
    )
    deg: Annotated[int, Field(ge=0, description="Total degree of Delta.")]
    deg_i: List[Annotated[int, Field(ge=0)]] = Field(
        description="Partial degree of Delta in the coefficients of each equation."
    )
    deg_var: Annotated[int, Field(ge=0, description="Weight of Delta under GL_{N+1}.")]
    mod_p_verdict: Verdict = Field(
        description="Shape of Delta reduced mod p: irreducible, the square of an irreducible, or a unit."
    )

    @property
    def c(self) -> int:
        return len(self.degrees)

    @model_validator(mode='after')
    def check_relations(self) -> 'DegreeReport':
        if len(self.deg_i) != len(self.degrees):
            raise ValueError(f"deg_i has {len(self.deg_i)} entries for {len(self.degrees)} equations")
        if self.deg != sum(self.deg_i):
            raise ValueError(f"deg={self.deg} differs from sum of deg_i={sum(self.deg_i)}")
        weighted = sum(d * g for d, g in zip(self.degrees, self.deg_i))
        if (self.N + 1) * self.deg_var != weighted:
            raise ValueError(
                f"(N+1)*deg_var={(self.N + 1) * self.deg_var} differs from sum d_i*deg_i={weighted}"
            )
        all_zero = self.deg == 0 and self.deg_var == 0 and not any(self.deg_i)
        if self.defective != all_zero:
            raise ValueError("defective must hold exactly when every degree vanishes")
        if self.defective and self.mod_p_verdict != 'unit':
            raise ValueError("A defective profile has verdict 'unit'")
        return self

    @field_serializer('N', 'p', 'mu', 'deg', 'deg_var')
    def serialize_int(self, value: int) -> str:
        return str(value)

    @field_serializer('degrees', 'deg_i')
    def serialize_int_list(self, values: List[int]) -> List[str]:
        return [str(v) for v in values]

    def to_dict(self) -> dict:
        """Convert the report to a dictionary with a fixed key order."""
        dumped = self.model_dump(mode='json')
        return {
            'N': dumped['N'],
            'c': str(self.c),
            'degrees': dumped['degrees'],
            'p': dumped['p'],
            'mu': dumped['mu'],
            'defective': self.defective,
            'deg': dumped['deg'],
            'deg_i': dumped['deg_i'],
            'deg_var': dumped['deg_var'],
            'mod_p_verdict': self.mod_p_verdict,
        }


class CrossCheck(BaseModel):
    """Agreement of the closed forms with the two combinatorial engines."""
    xi_closed_agrees: Optional[bool] = Field(
        default=None, description="Closed forms equal the degrees read off the face-sum character."
    )
    oracle_agrees: Optional[bool] = Field(
        default=None, description="The face-sum character equals the stabilized lattice-sum oracle."
    )

    @property
    def passed(self) -> bool:
        return self.xi_closed_agrees is not False and self.oracle_agrees is not False


class ComputeResult(BaseModel):
    """Output of ``discdeg compute``."""
    report: DegreeReport
    cross_check: CrossCheck

    def to_dict(self) -> dict:
        payload = self.report.to_dict()
        payload['cross_check'] = self.cross_check.model_dump()
        return payload


def _check_characteristic(value: int) -> int:
    if value != 0 and not (0 < value < MAX_CHARACTERISTIC and isprime(value)):
        raise ValueError(f"characteristic must be 0 or a prime < 2^31, got {value}")
    return value


class ComputeRequest(BaseModel):
    """Flags of ``discdeg compute``."""
    N: Annotated[int, Field(ge=0)]
    degrees: List[Annotated[int, Field(ge=1)]] = Field(min_length=1)
    char: Annotated[int, AfterValidator(_check_characteristic)] = 0
    output_format: Literal['json', 'table'] = 'json'
    cross_check: bool = True

    @model_validator(mode='after')
    def check_profile(self) -> 'ComputeRequest':
        if len(self.degrees) > self.N + 1:
            raise ValueError(
                f"codimension c={len(self.degrees)} exceeds N+1={self.N + 1}"
            )
        return self

    def to_profile(self) -> Profile:
        return Profile(self.N, tuple(self.degrees), self.char)


class SymbolicRequest(BaseModel):
    """Flags of ``discdeg symbolic``."""
    c: Annotated[int, Field(ge=1)]
    N: Annotated[int, Field(ge=0)]
    output_format: Literal['text', 'json'] = 'text'

    @model_validator(mode='after')
    def check_codimension(self) -> 'SymbolicRequest':
        if self.c > self.N + 1:
            raise ValueError(f"codimension c={self.c} exceeds N+1={self.N + 1}")
        return self


class VerifyRequest(BaseModel):
    """Flags of ``discdeg verify``."""
    max_k: Annotated[int, Field(ge=1, description="Largest polytope dimension c+N-1 visited.")]
    max_degree: Annotated[int, Field(ge=1, description="Largest equation degree visited.")]
    with_algebraic_oracle: bool = False
    workers: Annotated[int, Field(ge=1)] = 1
    seed: int = 0


class CheckResult(BaseModel):
    """One line of ``discdeg verify`` output."""
    check: str
    profile: Optional[str] = None
    passed: bool
    expected: str
    actual: str


def profile_error_message(error: Exception) -> str:
    """Flatten a pydantic or domain error into one line naming the violated constraint."""
    if isinstance(error, DomainError):
        return str(error)
    errors = getattr(error, 'errors', None)
    if callable(errors):
        parts = []
        for item in errors():
            location = '.'.join(str(x) for x in item.get('loc', ())) or 'request'
            parts.append(f"{location}: {item.get('msg')}")
        return '; '.join(parts)
    return str(error)


class EnvironmentSettings(BaseModel):
    """Numeric defaults read from DISCDEG_* environment variables."""
    model_config = ConfigDict(populate_by_name=True)

    workers: Annotated[int, Field(ge=1, alias='DISCDEG_WORKERS')] = 1
    oracle_max_level: Annotated[int, Field(ge=1, alias='DISCDEG_ORACLE_MAX_LEVEL')] = 64
    cross_check_max_k: Annotated[int, Field(ge=0, alias='DISCDEG_CROSS_CHECK_MAX_K')] = 10

    @classmethod
    def from_environ(cls) -> 'EnvironmentSettings':
        """
        Validate the variables that are set; unset ones keep their defaults.

        Returns:
            EnvironmentSettings: the parsed values.

        Raises:
            ValidationError: if a variable is not an integer in range.
        """
        names = [field.alias for field in cls.model_fields.values()]
        return cls.model_validate({name: os.environ[name] for name in names if name in os.environ})
