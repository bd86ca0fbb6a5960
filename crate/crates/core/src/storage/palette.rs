/// Label colors, indexed by class id. Entry 0 (background) is black.
pub const PALETTE: [[u8; 3]; 110] = [
    [0, 0, 0],
    [57, 115, 255],
    [131, 225, 0],
    [196, 66, 179],
    [19, 166, 141],
    [255, 191, 115],
    [94, 51, 225],
    [8, 196, 0],
    [166, 56, 93],
    [29, 170, 255],
    [215, 225, 101],
    [164, 44, 196],
    [0, 166, 83],
    [255, 121, 86],
    [25, 42, 225],
    [129, 196, 88],
    [166, 37, 123],
    [0, 245, 255],
    [225, 188, 76],
    [101, 22, 196],
    [75, 166, 90],
    [255, 57, 83],
    [0, 94, 225],
    [158, 196, 66],
    [165, 19, 166],
    [115, 255, 214],
    [225, 123, 51],
    [24, 0, 196],
    [75, 166, 56],
    [255, 29, 133],
    [101, 195, 225],
    [196, 189, 44],
    [110, 0, 166],
    [86, 255, 149],
    [225, 41, 25],
    [88, 111, 196],
    [102, 166, 37],
    [255, 0, 203],
    [76, 225, 212],
    [196, 130, 22],
    [105, 75, 166],
    [57, 255, 65],
    [225, 0, 58],
    [66, 137, 196],
    [142, 166, 19],
    [237, 115, 255],
    [51, 225, 151],
    [196, 56, 0],
    [56, 57, 166],
    [96, 255, 29],
    [225, 101, 174],
    [44, 178, 196],
    [166, 137, 0],
    [176, 86, 255],
    [25, 225, 74],
    [196, 88, 93],
    [37, 81, 166],
    [161, 255, 0],
    [225, 76, 214],
    [22, 196, 158],
    [166, 119, 75],
    [97, 57, 255],
    [21, 225, 0],
    [196, 66, 116],
    [19, 118, 166],
    [250, 255, 115],
    [180, 51, 225],
    [0, 196, 88],
    [166, 73, 56],
    [29, 59, 255],
    [154, 225, 101],
    [196, 44, 153],
    [0, 166, 164],
    [255, 204, 86],
    [107, 25, 225],
    [88, 196, 100],
    [166, 37, 60],
    [0, 119, 255],
    [189, 225, 76],
    [186, 22, 196],
    [75, 166, 134],
    [255, 129, 57],
    [16, 0, 225],
    [94, 196, 66],
    [166, 19, 94],
    [115, 227, 255],
    [225, 209, 51],
    [120, 0, 196],
    [56, 166, 91],
    [255, 36, 29],
    [101, 134, 225],
    [128, 196, 44],
    [166, 0, 140],
    [86, 255, 232],
    [225, 140, 25],
    [118, 88, 196],
    [39, 166, 37],
    [255, 0, 78],
    [76, 165, 225],
    [176, 196, 22],
    [149, 75, 166],
    [57, 255, 162],
    [225, 53, 0],
    [66, 73, 196],
    [70, 166, 19],
    [255, 115, 204],
    [51, 213, 225],
    [196, 152, 0],
    [109, 56, 166],
    [29, 255, 73],
];
