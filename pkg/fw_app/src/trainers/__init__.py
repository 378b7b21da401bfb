from ._trainers import Trainer
