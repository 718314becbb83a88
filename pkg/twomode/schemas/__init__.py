from .scenario import InitialSection, ModelSection, NumericsSection, ScenarioFile, SECTION_MODELS

__all__ = ["InitialSection", "ModelSection", "NumericsSection", "ScenarioFile", "SECTION_MODELS"]
