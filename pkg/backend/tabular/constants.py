"""
Constants for the tabular app.
Defines the CSV schemas the loader accepts.
"""
import enum

LABEL_COLUMN = "Class"

# Credit-card fraud dataset: Time, V1..V28 (PCA components), Amount, Class.
CREDITCARD_FEATURES = ["Time"] + [f"V{i}" for i in range(1, 29)] + ["Amount"]
CREDITCARD_COLUMNS = CREDITCARD_FEATURES + [LABEL_COLUMN]

# Published dataset statistics.
CREDITCARD_ROWS = 284807
CREDITCARD_ANOMALIES = 492


class Schema(str, enum.Enum):
    CREDITCARD = "creditcard"
    GENERIC = "generic"

    def describe(self):
        if self is Schema.CREDITCARD:
            return f"UTF-8 CSV with header: {', '.join(CREDITCARD_COLUMNS)}"
        return f"UTF-8 CSV with a header row; numeric feature columns plus a 0/1 '{LABEL_COLUMN}' column (or last column)"
