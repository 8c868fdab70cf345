package headfirst.observer;

public class ForecastDisplay implements Observer, DisplayElement {
    private final Subject weatherData;
    private float temperature;
    private float pressure;

    public ForecastDisplay(Subject weatherData) {
        this.weatherData = weatherData;
        weatherData.registerObserver(this);
    }

    @Override
    public void update(float temperature, float humidity, float pressure) {
        this.temperature = temperature;
        this.pressure = pressure;
        display();
    }

    @Override
    public void display() {
        System.out.println("Forecast: " + (pressure > 29.9f ? "Improving" : "Cooler"));
    }
}
