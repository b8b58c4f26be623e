# chart-type: percentage 3D bar chart
import numpy as np
import matplotlib.pyplot as plt

fig = plt.figure(figsize=(8, 6))
ax = fig.add_subplot(projection="3d")

xpos, ypos = np.meshgrid(np.arange(4), np.arange(2), indexing="ij")
xpos = xpos.ravel().astype(float)
ypos = ypos.ravel().astype(float)
part = np.array([30, 55, 42, 70, 64, 38, 51, 47], dtype=float)
whole = np.array([80, 90, 75, 95, 88, 70, 85, 78], dtype=float)
share = 100.0 * part / whole

ax.bar3d(xpos, ypos, np.zeros(8), 0.5, 0.5, share, color="#bc6c25", shade=True)
ax.set_zlim(0, 100)
ax.set_title("Training Completion Share by Team (%)")
ax.set_xlabel("Team")
ax.set_ylabel("Site")
plt.tight_layout()
plt.show()
