# chart-type: horizontal bar chart
import matplotlib.pyplot as plt

languages = ["Mandarin", "Spanish", "English", "Hindi", "Arabic", "Bengali"]
speakers = [939, 485, 380, 345, 274, 234]

fig, ax = plt.subplots(figsize=(8, 5))
ax.barh(languages, speakers, color="#457b9d")
ax.invert_yaxis()
ax.set_title("Native Speakers (millions)")
ax.set_xlabel("Speakers")
plt.tight_layout()
plt.show()
