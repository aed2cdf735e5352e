from keras.models import Sequential
from keras.layers import Conv2D, MaxPooling2D, Flatten, Dense

n_filters = 16
width = 3

model = Sequential()
model.add(Conv2D(64, (3, 3), activation='relu', input_shape=(32, 32, 3)))
model.add(MaxPooling2D())
# Filters unknown statically: the growth check must not guess.
model.add(Conv2D(n_filters, (width, width), activation='relu'))
model.add(MaxPooling2D())
model.add(Flatten())
model.add(Dense(n_filters * 2))
