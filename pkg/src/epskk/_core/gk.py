"""15-point Kronrod / 7-point Gauss rule tables on [-1, 1].

Nodes are ordered ascending; the embedded Gauss rule lives on the odd
node indices 1, 3, ..., 13.  Values carry 30+ digits so that double
rounding is exact.
"""

import numpy as np

_XK_POS = [
    "0.991455371120812639206854697526329",
    "0.949107912342758524526189684047851",
    "0.864864423359769072789712788640926",
    "0.741531185599394439863864773280788",
    "0.586087235467691130294144838258730",
    "0.405845151377397166906606412076961",
    "0.207784955007898467600689403773245",
]

_WK_POS = [
    "0.022935322010529224963732008058970",
    "0.063092092629978553290700663189204",
    "0.104790010322250183839876322541518",
    "0.140653259715525918745189590510238",
    "0.169004726639267902826583426598550",
    "0.190350578064785409913256402421014",
    "0.204432940075298892414161999234649",
]
_WK_CENTER = "0.209482141084727828012999174891714"

_WG_POS = [
    "0.129484966168869693270611432679082",
    "0.279705391489276667901467771423780",
    "0.381830050505118944950369775488975",
]
_WG_CENTER = "0.417959183673469387755102040816327"

_xp = np.array([float(s) for s in _XK_POS])
_wkp = np.array([float(s) for s in _WK_POS])
_wgp = np.array([float(s) for s in _WG_POS])

#: Kronrod nodes, ascending, shape (15,)
XK = np.concatenate([-_xp, [0.0], _xp[::-1]])

#: Kronrod weights matched to XK
WK = np.concatenate([_wkp, [float(_WK_CENTER)], _wkp[::-1]])

#: Gauss weights scattered onto the 15-node layout (zero at Kronrod-only nodes)
WG15 = np.zeros(15)
WG15[1:14:2] = np.concatenate([_wgp, [float(_WG_CENTER)], _wgp[::-1]])

XK.setflags(write=False)
WK.setflags(write=False)
WG15.setflags(write=False)
