"""Corner coordinates of the eight-polygon K4,4 complex before clipping."""

RAW = {
    "P_top": ["-6,0,10", "-5,-1,10", "5,-1,10", "6,0,10", "5,1,10", "-5,1,10"],
    "P_bot": ["-5,1,-10", "-6,0,-10", "-5,-1,-10", "17,-13,-10", "18,-12,-10", "17,-11,-10"],
    "P_vert1": ["-6,0,10", "-5,1,10", "-23/5,7/5,106/11", "-23/5,7/5,-46/5", "-5,1,-10", "-6,0,-10"],
    "P_vert2": ["-6,0,10", "-5,-1,10", "-23/5,-7/5,106/11", "-23/5,-7/5,-46/5", "-5,-1,-10", "-6,0,-10"],
    "P_vert3": ["6,0,10", "5,-1,10", "23/5,-59/25,46/5", "82/5,-712/55,-104/11", "17,-13,-10", "18,-12,-10"],
    "P_vert4": ["6,0,10", "5,1,10", "23/5,7/5,46/5", "82/5,-52/5,-104/11", "17,-11,-10", "18,-12,-10"],
    "P_diag1": [
        "-5,1,10", "-23/5,7/5,106/11", "82/5,-52/5,-104/11", "17,-11,-10",
        "17,-13,-10", "82/5,-712/55,-104/11", "-23/5,-7/5,106/11", "-5,-1,10",
    ],
    "P_diag2": [
        "-5,1,-10", "-23/5,7/5,-46/5", "23/5,7/5,46/5", "5,1,10",
        "5,-1,10", "23/5,-59/25,46/5", "-23/5,-7/5,-46/5", "-5,-1,-10",
    ],
}

# one part of the bipartition; the other is top, bot, diag1, diag2
VERTICAL = ("P_vert1", "P_vert2", "P_vert3", "P_vert4")
