package headfirst.observer;

public class StatisticsDisplay implements Observer, DisplayElement {
    private final Subject weatherData;
    private float temperature;
    private float pressure;

    public StatisticsDisplay(Subject weatherData) {
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
        System.out.println("Avg/Max/Min temperature = " + temperature);
    }
}
