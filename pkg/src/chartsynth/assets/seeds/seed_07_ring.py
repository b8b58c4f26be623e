# chart-type: ring chart
import matplotlib.pyplot as plt

cohorts = ["Undergrad", "Graduate", "Faculty", "Visitors"]
bookings = [52, 27, 13, 8]

fig, ax = plt.subplots(figsize=(6.5, 6.5))
wedges, _ = ax.pie(bookings, wedgeprops=dict(width=0.25, edgecolor="w"), startangle=30)
ax.legend(wedges, cohorts, loc="center", frameon=False)
ax.set_title("Lab Bookings by Cohort")
plt.tight_layout()
plt.show()
