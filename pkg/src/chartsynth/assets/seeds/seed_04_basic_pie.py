# chart-type: pie chart
import matplotlib.pyplot as plt

genres = ["Drama", "Comedy", "Documentary", "Action", "Other"]
screen_share = [32, 24, 14, 21, 9]
colors = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3"]

plt.figure(figsize=(6.5, 6.5))
plt.pie(screen_share, labels=genres, colors=colors, autopct="%1.1f%%", startangle=90)
plt.title("Festival Screening Mix")
plt.tight_layout()
plt.show()
