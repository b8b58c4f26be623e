# chart-type: 3D bar chart
import numpy as np
import matplotlib.pyplot as plt

fig = plt.figure(figsize=(8, 6))
ax = fig.add_subplot(projection="3d")

xpos, ypos = np.meshgrid(np.arange(4), np.arange(3), indexing="ij")
xpos = xpos.ravel().astype(float)
ypos = ypos.ravel().astype(float)
heights = np.array([3, 5, 7, 4, 6, 9, 2, 8, 5, 7, 4, 6], dtype=float)

ax.bar3d(xpos, ypos, np.zeros(12), 0.6, 0.6, heights, color="#4c72b0", shade=True)
ax.set_title("Warehouse Throughput Grid")
ax.set_xlabel("Aisle")
ax.set_ylabel("Shift")
ax.set_zlabel("Pallets")
plt.tight_layout()
plt.show()
