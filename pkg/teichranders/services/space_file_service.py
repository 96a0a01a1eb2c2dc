import json
import logging
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import ValidationError

from teichranders.core.errors import UsageError
from teichranders.core.halfplane import parse_complex
from teichranders.core.modelspace import ModelSpace, default_space
from teichranders.models.space import ModelSpaceDescription

logger = logging.getLogger(__name__)


class SpaceFileService:
    """Loads model-space description files and coefficient lists."""

    def load_description(self, path: Union[str, Path]) -> ModelSpaceDescription:
        file_path = Path(path)
        if not file_path.exists():
            raise UsageError(f"model-space file not found: {file_path}")
        try:
            data = json.loads(file_path.read_text(encoding="utf-8"))
            return ModelSpaceDescription.model_validate(data)
        except (json.JSONDecodeError, OSError) as e:
            raise UsageError(f"cannot read model-space file {file_path}: {e}") from None
        except ValidationError as e:
            raise UsageError(f"invalid model-space file {file_path}: {e}") from None

    def load_space(self, path: Optional[Union[str, Path]] = None) -> ModelSpace:
        """The space described by the file, or the default space when no file is given."""
        if path is None:
            logger.info("no model-space file given, using the default space")
            return default_space()
        description = self.load_description(path)
        logger.info(
            "loaded model space %s: %dx%d grid, %d basis functions",
            path,
            description.grid.nx,
            description.grid.ny,
            len(description.basis),
        )
        return ModelSpace.from_description(description)

    @staticmethod
    def parse_coefficients(text: Union[str, List], k: int) -> np.ndarray:
        """Comma-separated complex literals ('1,0.5+0.2i') or a list of literals/numbers."""
        items = text.split(",") if isinstance(text, str) else list(text)
        coeffs = []
        for item in items:
            if isinstance(item, (int, float, complex)):
                coeffs.append(complex(item))
            else:
                coeffs.append(parse_complex(str(item)))
        if len(coeffs) != k:
            raise UsageError(f"expected {k} coefficients, got {len(coeffs)}")
        return np.asarray(coeffs, dtype=complex)


space_file_service = SpaceFileService()
