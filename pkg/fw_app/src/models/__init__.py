from ._models import TwoCosineModel
