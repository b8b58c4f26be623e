# chart-type: stacked 3D bar chart
import numpy as np
import matplotlib.pyplot as plt

fig = plt.figure(figsize=(8, 6))
ax = fig.add_subplot(projection="3d")

xpos, ypos = np.meshgrid(np.arange(3), np.arange(3), indexing="ij")
xpos = xpos.ravel().astype(float)
ypos = ypos.ravel().astype(float)
base = np.array([4, 6, 3, 5, 7, 4, 6, 3, 5], dtype=float)
topper = np.array([2, 3, 2, 4, 2, 3, 1, 4, 2], dtype=float)

ax.bar3d(xpos, ypos, np.zeros(9), 0.55, 0.55, base, color="#52796f", shade=True)
ax.bar3d(xpos, ypos, base, 0.55, 0.55, topper, color="#cad2c5", shade=True)
ax.set_title("Greenhouse Yields: Early vs Late Season")
ax.set_xlabel("Bed")
ax.set_ylabel("Row")
plt.tight_layout()
plt.show()
