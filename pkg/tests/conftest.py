import math

# catalog ids on [0, 1] used across the property tests
CATALOG_01 = [
    "identity", "zero", "one", "square", "up1", "up2", "risefall",
    "heaviside0", "heaviside1", "ends",
    "power:r=0.25", "power:r=0.5", "power:r=2",
    "poly:c=0,1,-3,2", "sine:freq=9", "sine:scale=0.5;freq=3", "exp", "exp:scale=-2",
    "pl:knots=0,0.2,0.7,1;values=0,2,-1,1",
    "step:points=0.3,0.6;left=0,2;right=2,-1",
]

SMOOTH_01 = ["identity", "square", "up1", "up2", "power:r=2", "poly:c=0,1,-3,2",
             "sine:freq=9", "sine:scale=0.5;freq=3", "exp", "exp:scale=-2"]

TWO_PI = 2 * math.pi
