from ._sectors import (
    SPIN_PROJECTIONS,
    ParticleParams,
    LandauSector,
    EnergyLevel,
    make_sector,
    level_key,
    enumerate_levels_g2,
)
