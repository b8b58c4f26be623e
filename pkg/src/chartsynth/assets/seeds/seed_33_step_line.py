# chart-type: line chart
import matplotlib.pyplot as plt

release_days = [0, 20, 45, 80, 120, 160, 210, 260, 300, 365]
installed_base = [0, 4, 11, 19, 31, 38, 47, 52, 58, 61]

fig, ax = plt.subplots(figsize=(8, 5))
ax.step(release_days, installed_base, where="post", color="#0081a7", lw=2)
ax.fill_between(release_days, installed_base, step="post", alpha=0.18, color="#0081a7")
ax.set_title("Firmware Rollout Coverage")
ax.set_xlabel("Days since release")
ax.set_ylabel("Fleet coverage (%)")
ax.grid(alpha=0.3)
plt.tight_layout()
plt.show()
