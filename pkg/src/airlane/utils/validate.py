__all__ = [
    "ErrorsDetails",
    "ErrorsWithDocId",
    "errors_from_validation",
    "validate_and_extract_data_from_df",
    "ValidationResultSchema",
]

from typing import List

import pandas as pd
from pydantic import BaseModel, ValidationError

from .safe_get import sanitize_dataframe_for_json


# -------------------------------------------------
class ErrorsDetails(BaseModel):
    loc: str
    msg: str
    error_type: str


# -------------------------------------------------
class ErrorsWithDocId(BaseModel):
    doc_id: str
    details: List[ErrorsDetails]


# -------------------------------------------------
class ValidationResultSchema(BaseModel):
    errors: List[ErrorsWithDocId]
    validated: List[BaseModel]


# -------------------------------------------------
def errors_from_validation(e: ValidationError) -> List[ErrorsDetails]:
    """Flattens a pydantic ValidationError into field-located diagnostics.

    The location is rendered as a dotted path (``nfzs.0.polygon``) so a
    human can find the offending field in the input file.
    """
    return [
        ErrorsDetails(
            loc=".".join(str(part) for part in err["loc"]) or "<root>",
            msg=err["msg"],
            error_type=err["type"],
        )
        for err in e.errors()
    ]


# -------------------------------------------------
def validate_and_extract_data_from_df(
    dataframe: pd.DataFrame, model: type[BaseModel], field_id: str = "doc_id"
) -> ValidationResultSchema:
    """Validates every row of a DataFrame against a pydantic model.

    Args:
        dataframe (pd.DataFrame): The rows to validate.
        model (type[BaseModel]): The pydantic model used for validation.
        field_id (str, optional): Column identifying each row in the error
            list. Defaults to "doc_id".

    Returns:
        ValidationResultSchema: rows that passed in ``validated`` and the
        diagnostics of those that failed in ``errors``.
    """
    errors_list: List[ErrorsWithDocId] = []
    validated_list: List[BaseModel] = []
    dataframe = sanitize_dataframe_for_json(dataframe)
    for record in dataframe.to_dict(orient="records"):
        try:
            validated_list.append(model.model_validate(record))
        except ValidationError as e:
            doc_id = str(record.get(field_id, "unknown"))
            errors_list.append(
                ErrorsWithDocId(doc_id=doc_id, details=errors_from_validation(e))
            )
    return ValidationResultSchema(errors=errors_list, validated=validated_list)
