import json

from pydantic import BaseModel as _BaseModel
from pydantic import ConfigDict


class BaseModel(_BaseModel):
    """Immutable record shared by every parameter and result schema."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    def dict_plain(self) -> dict:
        return json.loads(self.model_dump_json())


class BaseSchema(BaseModel):
    """Record that also accepts numpy scalars and arrays in its fields."""

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        arbitrary_types_allowed=True,
    )
